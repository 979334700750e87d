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

#include "qpca/dme.h"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "qpca/error.h"

namespace qpca {

namespace {

using Index = Eigen::Index;

ComplexVector vec(const ComplexMatrix &m) {
    Index n = m.rows();
    ComplexVector v(n * n);
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) {
            v(a * n + b) = m(a, b);
        }
    }
    return v;
}

ComplexMatrix unvec(const ComplexVector &v, Index n) {
    ComplexMatrix m(n, n);
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) {
            m(a, b) = v(a * n + b);
        }
    }
    return m;
}

ComplexMatrix matrix_power(ComplexMatrix base, std::size_t e) {
    ComplexMatrix acc = ComplexMatrix::Identity(base.rows(), base.cols());
    while (e > 0) {
        if (e & 1) {
            acc = acc * base;
        }
        e >>= 1;
        if (e > 0) {
            base = base * base;
        }
    }
    return acc;
}

double depth_per_step(std::size_t n) {
    return std::max(1.0, std::log2(static_cast<double>(n)));
}

ResourceLedger dme_ledger(std::size_t steps, std::size_t n) {
    auto s = static_cast<double>(steps);
    return {s, s * depth_per_step(n), 0, 0};
}

}  // namespace

DensityMatrix swap_step(const DensityMatrix &rho, const DensityMatrix &sigma, double dt) {
    if (rho.dim() != sigma.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "rho and sigma differ in dimension");
    }
    std::size_t n = rho.dim();
    SwapOperator swap(n);
    auto nn = static_cast<Index>(n * n);
    // S^2 = I, so exp(-iS dt) = cos(dt) I - i sin(dt) S.
    ComplexMatrix u = std::cos(dt) * ComplexMatrix::Identity(nn, nn) - Complex(0, std::sin(dt)) * swap.matrix;
    ComplexMatrix joint = u * kron(rho.matrix(), sigma.matrix()) * u.adjoint();
    ComplexMatrix out = partial_trace_first(joint, n, n);
    return DensityMatrix(hermitian_part(out));
}

ComplexMatrix swap_step_transfer(const ComplexMatrix &rho, double dt) {
    Index n = rho.rows();
    double c = std::cos(dt);
    double s = std::sin(dt);
    ComplexMatrix id = ComplexMatrix::Identity(n, n);
    ComplexMatrix t = (c * c) * ComplexMatrix::Identity(n * n, n * n);
    t += (s * s) * vec(rho) * vec(id).transpose();
    t -= Complex(0, c * s) * (kron(rho, id) - kron(id, rho.transpose()));
    return t;
}

std::size_t dme_steps(double t, double eps, double c_dme) {
    if (!(eps > 0) || !(eps < 1)) {
        std::ostringstream msg;
        msg << "accuracy " << eps << " outside (0, 1)";
        throw Error(ErrorCode::InvalidAccuracy, msg.str());
    }
    if (!(c_dme > 0) || !std::isfinite(t)) {
        throw Error(ErrorCode::InvalidParameters, "need c_dme > 0 and finite t");
    }
    double n = std::ceil(c_dme * t * t / eps);
    return static_cast<std::size_t>(std::max(1.0, n));
}

std::vector<ComplexMatrix> probe_states(std::size_t n) {
    auto dim = static_cast<Index>(n);
    std::vector<ComplexMatrix> probes;
    probes.reserve(n * n);
    for (Index j = 0; j < dim; ++j) {
        ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
        p(j, j) = 1;
        probes.push_back(p);
    }
    for (Index j = 0; j < dim; ++j) {
        for (Index k = j + 1; k < dim; ++k) {
            ComplexVector plus = ComplexVector::Zero(dim);
            plus(j) = M_SQRT1_2;
            plus(k) = M_SQRT1_2;
            probes.push_back(plus * plus.adjoint());
            ComplexVector plus_i = ComplexVector::Zero(dim);
            plus_i(j) = M_SQRT1_2;
            plus_i(k) = Complex(0, M_SQRT1_2);
            probes.push_back(plus_i * plus_i.adjoint());
        }
    }
    return probes;
}

DmeResult exponentiate_density_steps(const DensityMatrix &rho, double t, std::size_t steps) {
    if (steps == 0) {
        throw Error(ErrorCode::InvalidParameters, "need at least one step");
    }
    std::size_t n = rho.dim();
    auto dim = static_cast<Index>(n);
    DmeResult r;
    r.steps = steps;
    r.transfer = matrix_power(swap_step_transfer(rho.matrix(), t / static_cast<double>(steps)), steps);
    r.implied_unitary = matrix_function(rho.matrix(), [t](double x) { return std::exp(Complex(0, -x * t)); });
    const ComplexMatrix &u = r.implied_unitary;
    bool first = true;
    for (const auto &probe : probe_states(n)) {
        ComplexMatrix out = unvec(r.transfer * vec(probe), dim);
        ComplexMatrix exact = u * probe * u.adjoint();
        r.empirical_error = std::max(r.empirical_error, 0.5 * trace_norm(hermitian_part(out - exact)));
        if (first) {
            r.channel_output = out;
            first = false;
        }
    }
    r.ledger = dme_ledger(steps, n);
    return r;
}

DmeResult exponentiate_density(const DensityMatrix &rho, double t, double eps, const DmeOptions &options) {
    return exponentiate_density_steps(rho, t, dme_steps(t, eps, options.c_dme));
}

ComplexMatrix apply_channel(const DmeResult &result, const ComplexMatrix &sigma) {
    Index n = sigma.rows();
    if (n * n != result.transfer.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "sigma does not match the channel");
    }
    return unvec(result.transfer * vec(sigma), n);
}

ComplexMatrix effective_unitary(const DmeResult &result, double t) {
    Index nn = result.transfer.rows();
    auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(nn))));
    // Choi matrix J[(j,a),(k,b)] = E(|j><k|)_{ab}.
    ComplexMatrix choi(nn, nn);
    for (Index j = 0; j < n; ++j) {
        for (Index k = 0; k < n; ++k) {
            for (Index a = 0; a < n; ++a) {
                for (Index b = 0; b < n; ++b) {
                    choi(j * n + a, k * n + b) = result.transfer(a * n + b, j * n + k);
                }
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(choi));
    ComplexVector v = es.eigenvectors().col(nn - 1);
    ComplexMatrix kraus(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            kraus(i, j) = v(j * n + i);
        }
    }
    ComplexMatrix u = nearest_unitary(kraus);
    double det_arg = std::arg(u.determinant());
    ComplexMatrix id = ComplexMatrix::Identity(n, n);
    ComplexMatrix best = u;
    double best_dist = INFINITY;
    for (Index k = 0; k < n; ++k) {
        double phi = (-t - det_arg + 2 * M_PI * static_cast<double>(k)) / static_cast<double>(n);
        ComplexMatrix cand = std::exp(Complex(0, phi)) * u;
        double d = (cand - id).norm();
        if (d < best_dist) {
            best_dist = d;
            best = cand;
        }
    }
    return best;
}

BlockEncoding dme_unitary_encoding(
    const DensityMatrix &rho, double t, double eps, DmeMode mode, const DmeOptions &options) {
    std::size_t steps = dme_steps(t, eps, options.c_dme);
    ComplexMatrix u;
    if (mode == DmeMode::Oracle) {
        u = matrix_function(rho.matrix(), [t](double x) { return std::exp(Complex(0, -x * t)); });
    } else {
        u = effective_unitary(exponentiate_density_steps(rho, t, steps), t);
    }
    return BlockEncoding(u, 1, 0, eps, rho.dim(), dme_ledger(steps, rho.dim()));
}

}  // namespace qpca
