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

#include "qpca/blockenc.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qpca/error.h"

namespace qpca {

namespace {

using Index = Eigen::Index;

std::size_t ceil_log2(std::size_t m) {
    std::size_t q = 0;
    while ((std::size_t{1} << q) < m) {
        ++q;
    }
    return q;
}

std::size_t register_dim(const BlockEncoding &be) {
    return static_cast<std::size_t>(be.unitary().rows()) / be.target_dim();
}

// U acts on (outer, inner); the result acts on (outer, gap, inner) with the
// identity on the gap register.
ComplexMatrix embed_with_gap(const ComplexMatrix &u, Index outer, Index gap, Index inner) {
    Index dim = outer * gap * inner;
    ComplexMatrix w = ComplexMatrix::Zero(dim, dim);
    for (Index o = 0; o < outer; ++o) {
        for (Index p = 0; p < outer; ++p) {
            auto blk = u.block(o * inner, p * inner, inner, inner);
            for (Index m = 0; m < gap; ++m) {
                w.block((o * gap + m) * inner, (p * gap + m) * inner, inner, inner) = blk;
            }
        }
    }
    return w;
}

void require_same_target(const std::vector<BlockEncoding> &bes) {
    for (const auto &be : bes) {
        if (be.target_dim() != bes.front().target_dim()) {
            std::ostringstream msg;
            msg << "target dims " << bes.front().target_dim() << " and " << be.target_dim();
            throw Error(ErrorCode::DimensionMismatch, msg.str());
        }
    }
}

}  // namespace

ResourceLedger &ResourceLedger::operator+=(const ResourceLedger &other) {
    rho_copies += other.rho_copies;
    circuit_depth += other.circuit_depth;
    ancilla_qubits += other.ancilla_qubits;
    unitary_calls += other.unitary_calls;
    return *this;
}

ResourceLedger ResourceLedger::scaled(double factor) const {
    return {rho_copies * factor, circuit_depth * factor, ancilla_qubits, unitary_calls * factor};
}

BlockEncoding::BlockEncoding(
    ComplexMatrix unitary, double alpha, std::size_t ancillas, double eps, std::size_t target_dim, ResourceLedger ledger)
    : unitary_(std::move(unitary)),
      alpha_(alpha),
      ancillas_(ancillas),
      eps_(eps),
      target_dim_(target_dim),
      ledger_(ledger) {
    if (target_dim_ == 0 || unitary_.rows() != unitary_.cols() ||
        static_cast<std::size_t>(unitary_.rows()) % target_dim_ != 0 ||
        !is_power_of_two(static_cast<std::size_t>(unitary_.rows()) / target_dim_)) {
        throw Error(ErrorCode::DimensionMismatch, "unitary size must be 2^a times the target dimension");
    }
    if (!(alpha_ > 0) || !std::isfinite(alpha_)) {
        throw Error(ErrorCode::InvalidScale, "alpha must be positive and finite");
    }
    if (!(eps_ >= 0)) {
        throw Error(ErrorCode::InvalidAccuracy, "eps must be nonnegative");
    }
    double defect = unitarity_defect(unitary_);
    if (defect > 1e-9) {
        std::ostringstream msg;
        msg << "|U^dagger U - I|_F = " << defect;
        throw Error(ErrorCode::NotUnitary, msg.str());
    }
}

std::size_t BlockEncoding::register_qubits() const {
    return log2_exact(static_cast<std::size_t>(unitary_.rows()) / target_dim_);
}

BlockEncoding BlockEncoding::with_eps(double eps) const {
    BlockEncoding out = *this;
    out.eps_ = eps;
    return out;
}

BlockEncoding BlockEncoding::with_alpha(double alpha) const {
    BlockEncoding out = *this;
    out.alpha_ = alpha;
    return out;
}

BlockEncoding BlockEncoding::with_ledger(ResourceLedger ledger) const {
    BlockEncoding out = *this;
    out.ledger_ = ledger;
    return out;
}

ComplexMatrix unitary_with_first_column(const ComplexVector &x) {
    Index n = x.size();
    double norm = x.norm();
    if (n == 0 || std::abs(norm - 1) > 1e-9) {
        throw Error(ErrorCode::NotUnitNorm, "first column must be a unit vector");
    }
    Complex phi = std::abs(x(0)) > 0 ? x(0) / std::abs(x(0)) : Complex(1);
    ComplexVector y = std::conj(phi) * x;
    ComplexVector w = -y;
    w(0) += 1.0;
    double wn2 = w.squaredNorm();
    ComplexMatrix u = ComplexMatrix::Identity(n, n);
    if (wn2 > 1e-28) {
        u -= (2.0 / wn2) * w * w.adjoint();
    }
    return phi * u;
}

ComplexMatrix unitary_dilation(const ComplexMatrix &block) {
    Index n = block.rows();
    if (hermiticity_defect(block) < 1e-13) {
        // B and sqrt(I - B^2) commute, so [[B, S], [S, -B]] is unitary.
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(block));
        RealVector lam = es.eigenvalues();
        if (lam.size() > 0 && lam.cwiseAbs().maxCoeff() > 1 + 1e-9) {
            std::ostringstream msg;
            msg << "block norm " << lam.cwiseAbs().maxCoeff() << " exceeds 1";
            throw Error(ErrorCode::InvalidScale, msg.str());
        }
        RealVector c(lam.size());
        for (Index i = 0; i < lam.size(); ++i) {
            lam(i) = std::clamp(lam(i), -1.0, 1.0);
            c(i) = std::sqrt(std::max(0.0, 1 - lam(i) * lam(i)));
        }
        const ComplexMatrix &v = es.eigenvectors();
        ComplexMatrix b = v * lam.cast<Complex>().asDiagonal() * v.adjoint();
        ComplexMatrix s = v * c.cast<Complex>().asDiagonal() * v.adjoint();
        ComplexMatrix u(2 * n, 2 * n);
        u << b, s, s, -b;
        return u;
    }
    Eigen::BDCSVD<ComplexMatrix> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
    RealVector s = svd.singularValues();
    if (s.size() > 0 && s(0) > 1 + 1e-9) {
        std::ostringstream msg;
        msg << "block norm " << s(0) << " exceeds 1";
        throw Error(ErrorCode::InvalidScale, msg.str());
    }
    RealVector c(s.size());
    for (Index i = 0; i < s.size(); ++i) {
        s(i) = std::min(s(i), 1.0);
        c(i) = std::sqrt(std::max(0.0, 1 - s(i) * s(i)));
    }
    const ComplexMatrix &wl = svd.matrixU();
    const ComplexMatrix &vr = svd.matrixV();
    ComplexMatrix b = wl * s.cast<Complex>().asDiagonal() * vr.adjoint();
    ComplexMatrix u(2 * n, 2 * n);
    u.topLeftCorner(n, n) = b;
    u.topRightCorner(n, n) = wl * c.cast<Complex>().asDiagonal() * wl.adjoint();
    u.bottomLeftCorner(n, n) = vr * c.cast<Complex>().asDiagonal() * vr.adjoint();
    u.bottomRightCorner(n, n) = -b.adjoint();
    return u;
}

BlockEncoding encode_self(const ComplexMatrix &u, double depth) {
    if (u.rows() != u.cols() || unitarity_defect(u) > kUnitaryInputTol) {
        throw Error(ErrorCode::NotUnitary, "encode_self needs a unitary");
    }
    return BlockEncoding(u, 1, 0, 0, static_cast<std::size_t>(u.rows()), {0, depth, 0, 1});
}

BlockEncoding encode_block(
    const ComplexMatrix &block, double alpha, double eps, std::size_t ancillas, ResourceLedger ledger) {
    if (block.rows() != block.cols() || block.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch, "block must be square");
    }
    return BlockEncoding(unitary_dilation(block), alpha, ancillas, eps, static_cast<std::size_t>(block.rows()), ledger);
}

ComplexMatrix extract_block(const BlockEncoding &be) {
    auto n = static_cast<Index>(be.target_dim());
    return be.unitary().topLeftCorner(n, n);
}

double block_error(const BlockEncoding &be, const ComplexMatrix &target) {
    return spectral_norm(be.alpha() * extract_block(be) - target);
}

BlockEncoding product(const BlockEncoding &be1, const BlockEncoding &be2) {
    require_same_target({be1, be2});
    double alpha = be1.alpha() * be2.alpha();
    double eps = be1.alpha() * be2.eps() + be2.alpha() * be1.eps();
    std::size_t ancillas = be1.ancillas() + be2.ancillas();
    ResourceLedger ledger = be1.ledger() + be2.ledger();
    auto n = static_cast<Index>(be1.target_dim());
    auto r1 = static_cast<Index>(register_dim(be1));
    auto r2 = static_cast<Index>(register_dim(be2));
    if (static_cast<std::size_t>(r1 * r2 * n) > kExplicitDimCap) {
        ComplexMatrix block = extract_block(be1) * extract_block(be2);
        return encode_block(block, alpha, eps, ancillas, ledger);
    }
    // be1's register outermost, be2's next, system innermost.
    ComplexMatrix w1 = embed_with_gap(be1.unitary(), r1, r2, n);
    ComplexMatrix w2 = kron(ComplexMatrix::Identity(r1, r1), be2.unitary());
    return BlockEncoding(w1 * w2, alpha, ancillas, eps, be1.target_dim(), ledger);
}

BlockEncoding lcu(const std::vector<double> &weights, const std::vector<BlockEncoding> &bes, const std::vector<int> &signs) {
    if (bes.empty()) {
        throw Error(ErrorCode::EmptyCombination, "lcu needs at least one term");
    }
    if (weights.size() != bes.size() || signs.size() != bes.size()) {
        throw Error(ErrorCode::DimensionMismatch, "weights, encodings and signs differ in length");
    }
    require_same_target(bes);
    std::size_t m = bes.size();
    double alpha = 0;
    double eps = 0;
    double max_depth = 0;
    std::size_t max_anc = 0;
    std::size_t max_reg = 1;
    ResourceLedger ledger;
    for (std::size_t i = 0; i < m; ++i) {
        if (!(weights[i] > 0) || !std::isfinite(weights[i])) {
            throw Error(ErrorCode::InvalidParameters, "lcu weights must be positive and finite");
        }
        if (signs[i] != 1 && signs[i] != -1) {
            throw Error(ErrorCode::InvalidParameters, "lcu signs must be +1 or -1");
        }
        alpha += weights[i] * bes[i].alpha();
        eps += weights[i] * bes[i].eps();
        max_depth = std::max(max_depth, bes[i].ledger().circuit_depth);
        max_anc = std::max(max_anc, bes[i].ancillas());
        max_reg = std::max(max_reg, register_dim(bes[i]));
        ledger.rho_copies += bes[i].ledger().rho_copies;
        ledger.unitary_calls += bes[i].ledger().unitary_calls;
    }
    std::size_t sel_qubits = ceil_log2(m);
    ledger.circuit_depth = static_cast<double>(m) * max_depth + 2.0 * static_cast<double>(sel_qubits);
    std::size_t ancillas = sel_qubits + max_anc;
    ledger.ancilla_qubits = static_cast<double>(ancillas);

    auto n = static_cast<Index>(bes.front().target_dim());
    auto sel_dim = static_cast<Index>(std::size_t{1} << sel_qubits);
    auto reg = static_cast<Index>(max_reg);
    if (static_cast<std::size_t>(sel_dim * reg * n) > kExplicitDimCap) {
        ComplexMatrix block = ComplexMatrix::Zero(n, n);
        for (std::size_t i = 0; i < m; ++i) {
            block += (signs[i] * weights[i] * bes[i].alpha() / alpha) * extract_block(bes[i]);
        }
        return encode_block(block, alpha, eps, ancillas, ledger);
    }
    ComplexVector amps = ComplexVector::Zero(sel_dim);
    for (std::size_t i = 0; i < m; ++i) {
        amps(static_cast<Index>(i)) = std::sqrt(weights[i] * bes[i].alpha() / alpha);
    }
    amps.normalize();
    ComplexMatrix prep = unitary_with_first_column(amps);
    Index inner = reg * n;
    ComplexMatrix select = ComplexMatrix::Identity(sel_dim * inner, sel_dim * inner);
    for (std::size_t i = 0; i < m; ++i) {
        auto pad = static_cast<Index>(max_reg / register_dim(bes[i]));
        auto k = static_cast<Index>(i);
        select.block(k * inner, k * inner, inner, inner) =
            static_cast<double>(signs[i]) * kron(ComplexMatrix::Identity(pad, pad), bes[i].unitary());
    }
    ComplexMatrix prep_full = kron(prep, ComplexMatrix::Identity(inner, inner));
    ComplexMatrix u = prep_full.adjoint() * select * prep_full;
    return BlockEncoding(u, alpha, ancillas, eps, bes.front().target_dim(), ledger);
}

BlockEncoding lcu(const std::vector<double> &weights, const std::vector<BlockEncoding> &bes) {
    return lcu(weights, bes, std::vector<int>(bes.size(), 1));
}

BlockEncoding tensor(const std::vector<BlockEncoding> &bes) {
    if (bes.empty()) {
        throw Error(ErrorCode::EmptyCombination, "tensor needs at least one factor");
    }
    if (bes.size() == 1) {
        return bes.front();
    }
    std::size_t k = bes.size();
    double alpha = 1;
    std::size_t ancillas = 0;
    std::size_t target = 1;
    std::size_t total = 1;
    ResourceLedger ledger;
    for (const auto &be : bes) {
        alpha *= be.alpha();
        ancillas += be.ancillas();
        target *= be.target_dim();
        total *= static_cast<std::size_t>(be.unitary().rows());
        ledger.rho_copies += be.ledger().rho_copies;
        ledger.unitary_calls += be.ledger().unitary_calls;
        ledger.ancilla_qubits += be.ledger().ancilla_qubits;
        ledger.circuit_depth = std::max(ledger.circuit_depth, be.ledger().circuit_depth);
    }
    double eps = 0;
    for (std::size_t i = 0; i < k; ++i) {
        double others = 1;
        for (std::size_t j = 0; j < k; ++j) {
            if (j != i) {
                others *= bes[j].alpha();
            }
        }
        eps += bes[i].eps() * others;
    }
    if (total > kExplicitDimCap) {
        ComplexMatrix block = extract_block(bes.front());
        for (std::size_t i = 1; i < k; ++i) {
            block = kron(block, extract_block(bes[i]));
        }
        return encode_block(block, alpha, eps, ancillas, ledger);
    }
    ComplexMatrix full = bes.front().unitary();
    for (std::size_t i = 1; i < k; ++i) {
        full = kron(full, bes[i].unitary());
    }
    // Reorder (r1, n1, r2, n2, ...) into (r1, r2, ..., n1, n2, ...).
    std::vector<std::size_t> regs(k);
    std::vector<std::size_t> sys(k);
    for (std::size_t i = 0; i < k; ++i) {
        regs[i] = register_dim(bes[i]);
        sys[i] = bes[i].target_dim();
    }
    std::vector<Index> perm(total);
    std::vector<std::size_t> digits(2 * k);
    for (std::size_t old = 0; old < total; ++old) {
        std::size_t rem = old;
        for (std::size_t i = k; i-- > 0;) {
            digits[2 * i + 1] = rem % sys[i];
            rem /= sys[i];
            digits[2 * i] = rem % regs[i];
            rem /= regs[i];
        }
        std::size_t idx = 0;
        for (std::size_t i = 0; i < k; ++i) {
            idx = idx * regs[i] + digits[2 * i];
        }
        for (std::size_t i = 0; i < k; ++i) {
            idx = idx * sys[i] + digits[2 * i + 1];
        }
        perm[old] = static_cast<Index>(idx);
    }
    auto dim = static_cast<Index>(total);
    ComplexMatrix u(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        for (Index j = 0; j < dim; ++j) {
            u(perm[i], perm[j]) = full(i, j);
        }
    }
    return BlockEncoding(u, alpha, ancillas, eps, target, ledger);
}

ComplexMatrix ry(double theta) {
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    ComplexMatrix r(2, 2);
    r << c, -s, s, c;
    return r;
}

BlockEncoding scale_down(const BlockEncoding &be, double p) {
    if (!(p > 1) || !std::isfinite(p)) {
        std::ostringstream msg;
        msg << "scale factor " << p << " must exceed 1";
        throw Error(ErrorCode::InvalidScale, msg.str());
    }
    double theta = 2 * std::acos(1 / p);
    auto n = static_cast<Index>(be.target_dim());
    BlockEncoding rot(ry(theta), 1, 0, 0, 2, {0, 1, 0, 0});
    BlockEncoding id(ComplexMatrix::Identity(n, n), 1, 0, 0, be.target_dim(), {});
    BlockEncoding scaler = reinterpret_as_ancilla(tensor({rot, id}), 1);
    BlockEncoding out = product(scaler, be);
    return out.with_eps(be.eps() / p);
}

BlockEncoding purify_density(const ComplexMatrix &prep, std::size_t dim_a, std::size_t dim_b, double prep_depth) {
    if (dim_a == 0 || dim_b == 0 || !is_power_of_two(dim_a) || !is_power_of_two(dim_b) ||
        prep.rows() != static_cast<Index>(dim_a * dim_b)) {
        std::ostringstream msg;
        msg << "split " << dim_a << " x " << dim_b << " does not match prep of size " << prep.rows();
        throw Error(ErrorCode::BadRegisterSplit, msg.str());
    }
    if (prep.rows() != prep.cols() || unitarity_defect(prep) > kUnitaryInputTol) {
        throw Error(ErrorCode::NotUnitary, "state preparation must be unitary");
    }
    std::size_t ancillas = log2_exact(dim_a) + log2_exact(dim_b);
    ResourceLedger ledger{0, 2 * prep_depth + 1, static_cast<double>(ancillas), 2};
    auto da = static_cast<Index>(dim_a);
    auto db = static_cast<Index>(dim_b);
    if (dim_a * dim_b * dim_b > kExplicitDimCap) {
        ComplexVector phi = prep.col(0);
        ComplexMatrix rho = ComplexMatrix::Zero(db, db);
        for (Index a = 0; a < da; ++a) {
            ComplexVector part = phi.segment(a * db, db);
            rho += part * part.adjoint();
        }
        return encode_block(rho, 1, 0, ancillas, ledger);
    }
    ComplexMatrix p = kron(prep, ComplexMatrix::Identity(db, db));
    ComplexMatrix s = kron(ComplexMatrix::Identity(da, da), swap_matrix(dim_b));
    return BlockEncoding(p.adjoint() * s * p, 1, ancillas, 0, dim_b, ledger);
}

BlockEncoding adjoint(const BlockEncoding &be) {
    return BlockEncoding(be.unitary().adjoint(), be.alpha(), be.ancillas(), be.eps(), be.target_dim(), be.ledger());
}

BlockEncoding with_phase(const BlockEncoding &be, Complex phase) {
    if (std::abs(std::abs(phase) - 1) > 1e-12) {
        throw Error(ErrorCode::InvalidParameters, "phase must have unit modulus");
    }
    return BlockEncoding(phase * be.unitary(), be.alpha(), be.ancillas(), be.eps(), be.target_dim(), be.ledger());
}

BlockEncoding reinterpret_as_ancilla(const BlockEncoding &be, std::size_t qubits) {
    std::size_t factor = std::size_t{1} << qubits;
    if (be.target_dim() % factor != 0 || be.target_dim() / factor == 0) {
        throw Error(ErrorCode::BadRegisterSplit, "target has too few qubits");
    }
    ResourceLedger ledger = be.ledger();
    ledger.ancilla_qubits += static_cast<double>(qubits);
    return BlockEncoding(
        be.unitary(), be.alpha(), be.ancillas() + qubits, be.eps(), be.target_dim() / factor, ledger);
}

BlockEncoding compress(const BlockEncoding &be) {
    return encode_block(extract_block(be), be.alpha(), be.eps(), be.ancillas(), be.ledger());
}

}  // namespace qpca
