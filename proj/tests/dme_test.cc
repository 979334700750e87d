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

#include <gtest/gtest.h>

#include <cmath>

#include "qpca/random.h"
#include "test_util.h"

namespace qpca {
namespace {

DensityMatrix diag2(double a) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = 1 - a;
    return DensityMatrix(m);
}

DensityMatrix plus_state() {
    ComplexVector v(2);
    v << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    return DensityMatrix::pure(v);
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a * b - b * a;
}

TEST(SwapOperator, Involution) {
    SwapOperator s(4);
    EXPECT_EQ((s.matrix * s.matrix - ComplexMatrix::Identity(16, 16)).norm(), 0);
    EXPECT_EQ((s.matrix - s.matrix.adjoint()).norm(), 0);
    EXPECT_LE(unitarity_defect(s.matrix), 0);
}

TEST(SwapStep, ZeroStepIsIdentity) {
    Rng rng(1);
    DensityMatrix rho(random_density(4, rng));
    DensityMatrix sigma(random_density(4, rng));
    EXPECT_LE((swap_step(rho, sigma, 0).matrix() - sigma.matrix()).norm(), 1e-14);
}

TEST(SwapStep, EqualStatesOnlySecondOrder) {
    Rng rng(2);
    DensityMatrix rho(random_density(4, rng));
    for (double dt : {0.1, 0.01}) {
        EXPECT_LE((swap_step(rho, rho, dt).matrix() - rho.matrix()).norm(), dt * dt);
    }
}

TEST(SwapStep, FirstOrderCommutator) {
    DensityMatrix rho = diag2(1.0);
    DensityMatrix sigma = plus_state();
    std::vector<double> ratios;
    for (double dt : {1e-1, 1e-2, 1e-3, 1e-4}) {
        ComplexMatrix expected = sigma.matrix() - Complex(0, dt) * commutator(rho.matrix(), sigma.matrix());
        double err = (swap_step(rho, sigma, dt).matrix() - expected).norm();
        ratios.push_back(err / (dt * dt));
    }
    double lo = *std::min_element(ratios.begin(), ratios.end());
    double hi = *std::max_element(ratios.begin(), ratios.end());
    EXPECT_GT(lo, 0);
    EXPECT_LE(hi / lo, 2.0);
}

TEST(SwapStep, OutputIsDensity) {
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        DensityMatrix rho(random_density(4, rng));
        DensityMatrix sigma(random_density(4, rng));
        DensityMatrix out = swap_step(rho, sigma, 0.3);
        EXPECT_NEAR(out.matrix().trace().real(), 1, 1e-10);
        EXPECT_GE(eigh(out.matrix()).eigenvalues.minCoeff(), -1e-9);
    }
}

TEST(SwapStep, TransferMatchesLiteral) {
    Rng rng(4);
    DensityMatrix rho(random_density(4, rng));
    DensityMatrix sigma(random_density(4, rng));
    ComplexMatrix t = swap_step_transfer(rho.matrix(), 0.2);
    ComplexMatrix st = sigma.matrix().transpose();
    Eigen::Map<const ComplexVector> vec(st.data(), 16);  // row-major vec of sigma
    ComplexVector out = t * vec;
    ComplexMatrix m = Eigen::Map<const ComplexMatrix>(out.data(), 4, 4).transpose();
    EXPECT_LE((m - swap_step(rho, sigma, 0.2).matrix()).norm(), 1e-12);
}

TEST(SwapStep, DimensionMismatch) {
    EXPECT_QPCA_ERROR(swap_step(diag2(0.5), DensityMatrix::maximally_mixed(4), 0.1), ErrorCode::DimensionMismatch);
}

TEST(DmeSteps, FormulaAndValidation) {
    EXPECT_EQ(dme_steps(0.5, 1e-2), 25u);
    EXPECT_EQ(dme_steps(0.5, 1e-2, 2), 50u);
    EXPECT_EQ(dme_steps(1e-6, 0.5), 1u);
    EXPECT_QPCA_ERROR(dme_steps(0.5, 0), ErrorCode::InvalidAccuracy);
    EXPECT_QPCA_ERROR(dme_steps(0.5, 1), ErrorCode::InvalidAccuracy);
}

// Commuting inputs stay diagonal; the swap channel still mixes in
// sin^2(dt) (rho - sigma) per step, so the drift is only O(t^2 / N).
TEST(Exponentiate, CommutingInputsDriftAtSecondOrder) {
    DensityMatrix rho = diag2(0.7);
    ComplexMatrix sigma = diag2(0.2).matrix();
    for (std::size_t n : {1, 10, 100}) {
        DmeResult r = exponentiate_density_steps(rho, 0.5, n);
        ComplexMatrix out = apply_channel(r, sigma);
        EXPECT_NEAR(std::abs(out(0, 1)), 0, 1e-15);
        double drift = (out - sigma).norm();
        EXPECT_LE(drift, 0.25 / static_cast<double>(n) * (rho.matrix() - sigma).norm() + 1e-15);
    }
}

TEST(Exponentiate, DiagonalExampleWithinAccuracy) {
    DmeResult r = exponentiate_density(diag2(0.7), 0.5, 1e-2);
    EXPECT_EQ(r.steps, 25u);
    EXPECT_LE(r.empirical_error, 1e-2);
    EXPECT_GE(r.empirical_error, 0);
    EXPECT_EQ(r.ledger.rho_copies, 25);
    EXPECT_EQ(r.ledger.circuit_depth, 25);  // log2(2) = 1 per step
}

TEST(Exponentiate, ChannelMatchesIteratedSwapSteps) {
    Rng rng(5);
    DensityMatrix rho(random_density(4, rng));
    DensityMatrix sigma(random_density(4, rng));
    DmeResult r = exponentiate_density_steps(rho, 0.5, 7);
    DensityMatrix s = sigma;
    for (int i = 0; i < 7; ++i) {
        s = swap_step(rho, s, 0.5 / 7);
    }
    EXPECT_LE((apply_channel(r, sigma.matrix()) - s.matrix()).norm(), 1e-12);
    EXPECT_EQ(r.ledger.circuit_depth, 7 * 2);
}

TEST(Exponentiate, ErrorHalvesWhenStepsDouble) {
    Rng rng(6);
    DensityMatrix rho(random_density(4, rng));
    double prev = exponentiate_density_steps(rho, 0.5, 16).empirical_error;
    for (std::size_t n : {32, 64, 128}) {
        double cur = exponentiate_density_steps(rho, 0.5, n).empirical_error;
        EXPECT_NEAR(prev / cur, 2.0, 0.3);
        prev = cur;
    }
}

TEST(Exponentiate, InvalidAccuracy) {
    EXPECT_QPCA_ERROR(exponentiate_density(diag2(0.5), 0.5, 0), ErrorCode::InvalidAccuracy);
    EXPECT_QPCA_ERROR(exponentiate_density(diag2(0.5), 0.5, 1.5), ErrorCode::InvalidAccuracy);
}

TEST(Probes, CountAndValidity) {
    auto probes = probe_states(4);
    EXPECT_EQ(probes.size(), 16u);
    for (const auto &p : probes) {
        EXPECT_NO_THROW(DensityMatrix{p});
    }
}

TEST(EffectiveUnitary, ApproachesExactExponential) {
    Rng rng(7);
    DensityMatrix rho(random_density(4, rng));
    DmeResult r = exponentiate_density(rho, 0.5, 1e-4);
    ComplexMatrix u = effective_unitary(r, 0.5);
    EXPECT_LE(unitarity_defect(u), 1e-10);
    EXPECT_LE(spectral_norm(u - r.implied_unitary), 1e-3);
}

TEST(DmeEncoding, ModesAndLedger) {
    Rng rng(8);
    DensityMatrix rho(random_density(4, rng));
    BlockEncoding oracle = dme_unitary_encoding(rho, 0.5, 1e-3, DmeMode::Oracle);
    BlockEncoding faithful = dme_unitary_encoding(rho, 0.5, 1e-3, DmeMode::SampleFaithful);
    ComplexMatrix exact = matrix_function(rho.matrix(), [](double x) { return std::exp(Complex(0, -0.5 * x)); });
    EXPECT_LE(spectral_norm(extract_block(oracle) - exact), 1e-12);
    EXPECT_LE(spectral_norm(extract_block(faithful) - exact), 1e-2);
    EXPECT_EQ(oracle.ledger(), faithful.ledger());
    EXPECT_EQ(oracle.ledger().rho_copies, static_cast<double>(dme_steps(0.5, 1e-3)));
    EXPECT_EQ(oracle.eps(), 1e-3);
}

}  // namespace
}  // namespace qpca
