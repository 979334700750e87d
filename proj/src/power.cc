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

#include "qpca/power.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qpca/random.h"

namespace qpca {

namespace {

constexpr double kPresentation = M_PI / 4;
constexpr double kMinOverlap = 1e-6;
// Largest gamma handed to the amplification cost model.
constexpr double kMaxLogGamma = 690;

void check_eps(double eps) {
    if (!(eps > 0) || !(eps < 0.5)) {
        std::ostringstream msg;
        msg << "accuracy " << eps << " outside (0, 1/2)";
        throw Error(ErrorCode::InvalidAccuracy, msg.str());
    }
}

struct Run {
    ComplexVector vector;
    double value = 0;
    std::size_t k = 0;
    ResourceLedger ledger;
};

Run adaptive_run(
    const EncodingBuilder &build, std::size_t dim, double eps, std::uint64_t run_seed, const PowerOptions &options) {
    auto k_max = static_cast<std::size_t>(std::ceil(options.c_k / options.gap_floor * std::log(1 / eps)));
    bool sampled = options.shots.kind == ShotModel::Kind::Sampled;
    double value_eps = sampled ? eps / 4 : eps;
    ResourceLedger spent;
    for (int attempt = 0; attempt <= options.max_reseeds; ++attempt) {
        Rng rng(mix_seed(run_seed, static_cast<std::uint64_t>(attempt)));
        ComplexVector x0 = random_state(dim, rng);
        Run run;
        bool have_prev = false;
        double log_sub = 0;
        double alpha = 1;
        for (std::size_t k = 1;; k *= 2) {
            if (k > k_max) {
                std::ostringstream msg;
                msg << "no convergence up to k_max = " << k_max << " (gap below floor " << options.gap_floor << ")";
                throw Error(ErrorCode::GapTooSmall, msg.str());
            }
            BlockEncoding be = build(eps / static_cast<double>(k));
            PowerState ps = quantum_power_state(be, k, eps, x0, options.c_amp);
            ShotModel shots = options.shots;
            shots.seed = mix_seed(shots.seed, run_seed ^ k);
            ValueEstimate ve = estimate_top_eigenvalue(be, ps.state, value_eps, shots, kPresentation);
            spent += ps.ledger + ve.ledger;
            bool converged = have_prev && std::abs(ve.value - run.value) < eps / 2 &&
                             phase_distance(ps.state, run.vector) < eps / 2;
            run.vector = ps.state;
            run.value = ve.value;
            run.k = k;
            log_sub = ps.log_subnormalization;
            alpha = be.alpha();
            have_prev = true;
            if (converged) {
                break;
            }
        }
        run.ledger = spent;
        // |B^k x0| ~ |c_1| |lambda_B|^k, lambda_B the top block eigenvalue.
        double lambda_b = std::abs(run.value) * kPresentation / alpha;
        double log_overlap = lambda_b > 0 ? log_sub - static_cast<double>(run.k) * std::log(lambda_b) : -INFINITY;
        if (log_overlap >= std::log(kMinOverlap)) {
            return run;
        }
    }
    throw Error(ErrorCode::GapTooSmall, "every seed state is nearly orthogonal to the top eigenvector");
}

}  // namespace

EigenEstimate classical_power_method(const ComplexMatrix &a, const ComplexVector &x0, std::size_t k) {
    double n0 = x0.norm();
    if (!(n0 > 0)) {
        throw Error(ErrorCode::ZeroVector, "start vector is zero");
    }
    if (a.rows() != a.cols() || a.rows() != x0.size()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix and start vector sizes differ");
    }
    ComplexVector x = x0 / n0;
    for (std::size_t i = 0; i < k; ++i) {
        ComplexVector y = a * x;
        double s = y.norm();
        if (!(s > 1e-300)) {
            throw Error(ErrorCode::ZeroMatrixPower, "A^k x0 vanished");
        }
        x = y / s;
    }
    EigenEstimate est;
    est.value = x.dot(a * x).real();
    est.vector = x;
    est.residual = (a * x - est.value * x).norm();
    est.k = k;
    return est;
}

PowerState quantum_power_state(
    const BlockEncoding &be, std::size_t k, double eps, const ComplexVector &x0, double c_amp) {
    ComplexMatrix b = extract_block(be);
    if (x0.size() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "seed state does not match the encoding");
    }
    double n0 = x0.norm();
    if (!(n0 > 0)) {
        throw Error(ErrorCode::ZeroVector, "seed state is zero");
    }
    PowerState out;
    ComplexVector x = x0 / n0;
    for (std::size_t i = 0; i < k; ++i) {
        ComplexVector y = b * x;
        double s = y.norm();
        if (!(s > 1e-300)) {
            throw Error(ErrorCode::ZeroMatrixPower, "encoded power annihilates the seed state");
        }
        out.log_subnormalization += std::log(s);
        x = y / s;
    }
    out.state = x;
    auto kd = static_cast<double>(k);
    const ResourceLedger &one = be.ledger();
    out.ledger = {one.rho_copies, kd * one.circuit_depth, kd * one.ancilla_qubits, kd * one.unitary_calls};
    double log_gamma = std::min(-out.log_subnormalization, kMaxLogGamma);
    if (log_gamma > 1e-12) {
        double gamma = std::exp(log_gamma);
        auto m = static_cast<double>(amplify_rounds(gamma, 0.1, std::min(eps, 0.25), c_amp));
        out.ledger.circuit_depth *= m;
        out.ledger.unitary_calls += m;
        out.ledger.ancilla_qubits += 1;
    }
    return out;
}

ValueEstimate estimate_top_eigenvalue(
    const BlockEncoding &be, const ComplexVector &state, double eps, const ShotModel &shots, double scale) {
    ComplexMatrix b = extract_block(be);
    if (state.size() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "state does not match the encoding");
    }
    if (!(eps > 0)) {
        throw Error(ErrorCode::InvalidAccuracy, "eps must be positive");
    }
    double q = state.dot(b * state).real();
    ValueEstimate out;
    out.ledger.unitary_calls = std::ceil(1 / eps);
    if (shots.kind == ShotModel::Kind::Exact) {
        out.value = be.alpha() * q / scale;
        return out;
    }
    // Hadamard test: P(0) = (1 + Re<psi|B|psi>) / 2.
    double e_block = eps * scale / be.alpha();
    auto m = static_cast<long long>(std::ceil(shots.c_shots / (e_block * e_block)));
    double p = std::clamp((1 + q) / 2, 0.0, 1.0);
    Rng rng(shots.seed);
    std::binomial_distribution<long long> dist(m, p);
    long long zeros = dist(rng);
    double est = 2 * static_cast<double>(zeros) / static_cast<double>(m) - 1;
    out.value = be.alpha() * est / scale;
    return out;
}

EigenEstimate power_stage(
    const EncodingBuilder &build, const ComplexMatrix &target, double eps, const PowerOptions &options) {
    check_eps(eps);
    if (!(options.gap_floor > 0) || !(options.c_k > 0)) {
        throw Error(ErrorCode::InvalidParameters, "gap_floor and c_k must be positive");
    }
    auto dim = static_cast<std::size_t>(target.rows());
    Run a = adaptive_run(build, dim, eps, mix_seed(options.seed, 1), options);
    Run b = adaptive_run(build, dim, eps, mix_seed(options.seed, 2), options);
    // Independent seeds land on different vectors when the top eigenvalue is degenerate.
    double spread = phase_distance(a.vector, b.vector);
    if (spread > 2 * eps) {
        std::ostringstream msg;
        msg << "independent seeds disagree by " << spread << "; top eigenvalue looks degenerate";
        throw Error(ErrorCode::GapTooSmall, msg.str());
    }
    EigenEstimate est;
    est.value = a.value;
    est.vector = a.vector;
    est.residual = (target * a.vector - a.value * a.vector).norm();
    est.ledger = a.ledger + b.ledger;
    est.k = a.k;
    return est;
}

EigenEstimate qpca_top(const RhoSource &source, double eps, const PowerOptions &options) {
    EncodingBuilder build = [&](double accuracy) {
        return block_encode_density(source, accuracy, options.dme_mode, options.log_mode, options.density);
    };
    return power_stage(build, source.rho.matrix(), eps, options);
}

BlockEncoding deflate(
    const BlockEncoding &be,
    double r,
    const ComplexVector &v,
    double vec_copies_eps,
    const PowerOptions &options,
    double v_copy_cost) {
    if (!(r > 0) || !(r <= 1)) {
        std::ostringstream msg;
        msg << "eigenvalue " << r << " outside (0, 1]";
        throw Error(ErrorCode::InvalidEigenvalue, msg.str());
    }
    if (static_cast<std::size_t>(v.size()) != be.target_dim()) {
        throw Error(ErrorCode::DimensionMismatch, "vector does not match the encoding");
    }
    if (std::abs(v.norm() - 1) > 1e-8) {
        throw Error(ErrorCode::NotUnitNorm, "deflation vector must be a unit vector");
    }
    BlockEncoding vv = [&] {
        if (options.dme_mode == DmeMode::Oracle) {
            BlockEncoding exact = scale_down(purify_density(unitary_with_first_column(v), 1, be.target_dim()), 4 / M_PI);
            ResourceLedger ledger = exact.ledger();
            ledger.rho_copies +=
                static_cast<double>(dme_steps(0.5, vec_copies_eps * vec_copies_eps, options.density.c_dme)) *
                v_copy_cost;
            return exact.with_ledger(ledger);
        }
        return block_encode_density(
            {DensityMatrix::pure(v), v_copy_cost}, vec_copies_eps, DmeMode::SampleFaithful, options.log_mode,
            options.density);
    }();
    if (r < 1) {
        vv = scale_down(vv, 1 / r);
    }
    return lcu({1, 1}, {be, vv}, {1, -1});
}

ComponentList qpca_components(const RhoSource &source, std::size_t R, double eps, const PowerOptions &options) {
    EncodingBuilder build = [source, options](double accuracy) {
        return block_encode_density(source, accuracy, options.dme_mode, options.log_mode, options.density);
    };
    return qpca_components(build, source.rho.matrix(), R, eps, options);
}

ComponentList qpca_components(
    const EncodingBuilder &first_stage,
    const ComplexMatrix &target,
    std::size_t R,
    double eps,
    const PowerOptions &options) {
    if (R == 0 || R > static_cast<std::size_t>(target.rows())) {
        throw Error(ErrorCode::InvalidParameters, "R must be between 1 and the dimension");
    }
    check_eps(eps);
    ComponentList out;
    EncodingBuilder build = first_stage;
    ComplexMatrix x = target;
    for (std::size_t j = 0; j < R; ++j) {
        EigenEstimate est;
        try {
            est = power_stage(build, x, eps, options);
        } catch (const Error &e) {
            if (e.code() != ErrorCode::GapTooSmall) {
                throw;
            }
            std::ostringstream msg;
            msg << "component " << j + 1 << ": " << e.what();
            throw GapTooSmallError(msg.str(), out);
        }
        out.total_ledger += est.ledger;
        out.components.push_back(est);
        if (j + 1 == R) {
            break;
        }
        double r = est.value;
        if (r > 1 && r <= 1 + eps) {
            r = 1;
        }
        ComplexVector v = est.vector;
        double cost = est.ledger.rho_copies;
        EncodingBuilder prev = build;
        build = [prev, r, v, cost, options](double accuracy) {
            return deflate(prev(accuracy), r, v, accuracy, options, cost);
        };
        x -= r * v * v.adjoint();
    }
    return out;
}

}  // namespace qpca
