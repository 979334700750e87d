// Copyright 2026 The qpca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpca/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qpca/error.h"

namespace qpca {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NotUnitary:
            return "NotUnitary";
        case ErrorCode::PhaseWrapRisk:
            return "PhaseWrapRisk";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::EmptyCombination:
            return "EmptyCombination";
        case ErrorCode::InvalidScale:
            return "InvalidScale";
        case ErrorCode::BadRegisterSplit:
            return "BadRegisterSplit";
        case ErrorCode::InvalidAccuracy:
            return "InvalidAccuracy";
        case ErrorCode::SupNormViolation:
            return "SupNormViolation";
        case ErrorCode::NotHermitianTarget:
            return "NotHermitianTarget";
        case ErrorCode::PhaseOutOfRange:
            return "PhaseOutOfRange";
        case ErrorCode::InvalidParameters:
            return "InvalidParameters";
        case ErrorCode::ZeroVector:
            return "ZeroVector";
        case ErrorCode::ZeroMatrixPower:
            return "ZeroMatrixPower";
        case ErrorCode::GapTooSmall:
            return "GapTooSmall";
        case ErrorCode::InvalidEigenvalue:
            return "InvalidEigenvalue";
        case ErrorCode::ParseError:
            return "ParseError";
        case ErrorCode::EmptyDataset:
            return "EmptyDataset";
        case ErrorCode::NegativeWeight:
            return "NegativeWeight";
        case ErrorCode::WeightSumZero:
            return "WeightSumZero";
        case ErrorCode::NotUnitNorm:
            return "NotUnitNorm";
        case ErrorCode::RankDeficient:
            return "RankDeficient";
        case ErrorCode::NotDensityMatrix:
            return "NotDensityMatrix";
    }
    return "Unknown";
}

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

std::size_t log2_exact(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) {
        k++;
    }
    return k;
}

std::size_t next_power_of_two(std::size_t n) {
    return std::size_t{1} << log2_exact(std::max<std::size_t>(n, 1));
}

double spectral_norm(const ComplexMatrix &a) {
    if (a.size() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues()(0);
}

double frobenius_norm(const ComplexMatrix &a) {
    return a.norm();
}

double trace_norm(const ComplexMatrix &a) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues().sum();
}

double hermiticity_defect(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) {
        return INFINITY;
    }
    return (a - a.adjoint()).norm();
}

double unitarity_defect(const ComplexMatrix &u) {
    if (u.rows() != u.cols()) {
        return INFINITY;
    }
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

ComplexMatrix swap_matrix(std::size_t n) {
    auto dim = static_cast<Eigen::Index>(n);
    ComplexMatrix s = ComplexMatrix::Zero(dim * dim, dim * dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            s(j * dim + i, i * dim + j) = 1.0;
        }
    }
    return s;
}

ComplexMatrix partial_trace_first(const ComplexMatrix &a, std::size_t d1, std::size_t d2) {
    auto n1 = static_cast<Eigen::Index>(d1);
    auto n2 = static_cast<Eigen::Index>(d2);
    if (a.rows() != n1 * n2 || a.cols() != n1 * n2) {
        throw Error(ErrorCode::DimensionMismatch, "partial trace split does not match operator size");
    }
    ComplexMatrix out = ComplexMatrix::Zero(n2, n2);
    for (Eigen::Index k = 0; k < n1; ++k) {
        out += a.block(k * n2, k * n2, n2, n2);
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix &a) {
    return (a + a.adjoint()) * 0.5;
}

double phase_distance(const ComplexVector &a, const ComplexVector &b) {
    Complex overlap = a.dot(b);  // conj(a) . b
    Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1, 0);
    return (phase * a - b).norm();
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() < 1 || m_.rows() != m_.cols() || !is_power_of_two(static_cast<std::size_t>(m_.rows()))) {
        throw Error(ErrorCode::NotDensityMatrix, "dimension must be a power of two");
    }
    if (hermiticity_defect(m_) > kConstructionTol) {
        throw Error(ErrorCode::NotDensityMatrix, "not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1, 0)) > kConstructionTol) {
        std::ostringstream msg;
        msg << "trace " << m_.trace().real() << " != 1";
        throw Error(ErrorCode::NotDensityMatrix, msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m_), Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -kConstructionTol) {
        throw Error(ErrorCode::NotDensityMatrix, "negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const ComplexVector &psi) {
    ComplexVector v = psi / psi.norm();
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(dim));
}

Spectrum eigh(const ComplexMatrix &a) {
    double defect = hermiticity_defect(a);
    if (defect > kHermitianInputTol) {
        std::ostringstream msg;
        msg << "|A - A^dagger|_F = " << defect;
        throw Error(ErrorCode::NotHermitian, msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a));
    const RealVector &vals = es.eigenvalues();
    const ComplexMatrix &vecs = es.eigenvectors();
    auto n = vals.size();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        double ax = std::abs(vals(x));
        double ay = std::abs(vals(y));
        if (ax != ay) {
            return ax > ay;
        }
        return vals(x) > vals(y);
    });

    Spectrum s;
    s.eigenvalues.resize(n);
    s.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; i++) {
        Eigen::Index src = order[static_cast<std::size_t>(i)];
        s.eigenvalues(i) = vals(src);
        ComplexVector v = vecs.col(src);
        Eigen::Index pivot = 0;
        double best = -1;
        for (Eigen::Index j = 0; j < n; j++) {
            if (std::abs(v(j)) > best) {
                best = std::abs(v(j));
                pivot = j;
            }
        }
        v *= std::conj(v(pivot)) / std::abs(v(pivot));
        v(pivot) = Complex(v(pivot).real(), 0);
        s.eigenvectors.col(i) = v;
    }
    s.gap = n >= 2 ? std::abs(s.eigenvalues(0) - s.eigenvalues(1)) : std::abs(s.eigenvalues(0));
    return s;
}

ComplexMatrix matrix_function(const ComplexMatrix &a, const std::function<Complex(double)> &f) {
    Spectrum s = eigh(a);
    ComplexMatrix out = ComplexMatrix::Zero(a.rows(), a.cols());
    for (std::size_t i = 0; i < s.size(); i++) {
        ComplexVector v = s.vector(i);
        out += f(s.eigenvalues(static_cast<Eigen::Index>(i))) * (v * v.adjoint());
    }
    return out;
}

ComplexMatrix principal_log_unitary(const ComplexMatrix &u) {
    double defect = unitarity_defect(u);
    if (defect > kUnitaryInputTol) {
        std::ostringstream msg;
        msg << "|U^dagger U - I|_F = " << defect;
        throw Error(ErrorCode::NotUnitary, msg.str());
    }
    // A unitary is normal, so its Schur form is diagonal up to roundoff.
    Eigen::ComplexSchur<ComplexMatrix> schur(u);
    const ComplexMatrix &q = schur.matrixU();
    const ComplexMatrix &t = schur.matrixT();
    auto n = u.rows();
    RealVector theta(n);
    for (Eigen::Index i = 0; i < n; i++) {
        double phase = -std::arg(t(i, i));
        if (std::abs(phase) > M_PI - 0.1) {
            std::ostringstream msg;
            msg << "eigenphase " << phase << " within 0.1 of +-pi";
            throw Error(ErrorCode::PhaseWrapRisk, msg.str());
        }
        theta(i) = phase;
    }
    return hermitian_part(q * theta.cast<Complex>().asDiagonal() * q.adjoint());
}

ComplexMatrix nearest_unitary(const ComplexMatrix &a) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace qpca
