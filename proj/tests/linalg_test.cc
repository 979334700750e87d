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

#include <gtest/gtest.h>

#include <cmath>

#include "qpca/random.h"
#include "test_util.h"

namespace qpca {
namespace {

using Index = Eigen::Index;

TEST(Linalg, NormsAreZeroOnlyForZero) {
    Rng rng(1);
    ComplexMatrix z = ComplexMatrix::Zero(3, 2);
    EXPECT_EQ(spectral_norm(z), 0);
    EXPECT_EQ(frobenius_norm(z), 0);
    ComplexMatrix a = random_hermitian(4, 2.0, rng);
    EXPECT_NEAR(spectral_norm(a), 2.0, 1e-12);
    EXPECT_GE(frobenius_norm(a), spectral_norm(a));
}

TEST(Linalg, PowerOfTwoHelpers) {
    EXPECT_TRUE(is_power_of_two(1));
    EXPECT_TRUE(is_power_of_two(16));
    EXPECT_FALSE(is_power_of_two(0));
    EXPECT_FALSE(is_power_of_two(12));
    EXPECT_EQ(log2_exact(32), 5u);
    EXPECT_EQ(next_power_of_two(5), 8u);
    EXPECT_EQ(next_power_of_two(8), 8u);
}

TEST(Eigh, HalfIdentity) {
    Spectrum s = eigh(ComplexMatrix::Identity(2, 2) / 2.0);
    EXPECT_NEAR(s.eigenvalues(0), 0.5, 1e-15);
    EXPECT_NEAR(s.eigenvalues(1), 0.5, 1e-15);
    EXPECT_NEAR(s.gap, 0, 1e-15);
}

TEST(Eigh, Diagonal) {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 0.3;
    a(1, 1) = 0.7;
    Spectrum s = eigh(a);
    EXPECT_NEAR(s.eigenvalues(0), 0.7, 1e-15);
    EXPECT_NEAR(s.eigenvalues(1), 0.3, 1e-15);
    EXPECT_NEAR(std::abs(s.vector(0)(1) - 1.0), 0, 1e-15);
    EXPECT_NEAR(std::abs(s.vector(1)(0) - 1.0), 0, 1e-15);
}

TEST(Eigh, RandomResidualOrthonormalityReconstruction) {
    Rng rng(2);
    for (int t = 0; t < 10; ++t) {
        ComplexMatrix a = random_hermitian(8, 1.5, rng);
        Spectrum s = eigh(a);
        ComplexMatrix recon = ComplexMatrix::Zero(8, 8);
        for (std::size_t i = 0; i < 8; ++i) {
            ComplexVector v = s.vector(i);
            EXPECT_LE((a * v - s.eigenvalues(static_cast<Index>(i)) * v).norm(), 1e-8);
            recon += s.eigenvalues(static_cast<Index>(i)) * v * v.adjoint();
            // Phase convention: largest-magnitude component is real positive.
            Index arg = 0;
            v.cwiseAbs().maxCoeff(&arg);
            EXPECT_NEAR(v(arg).imag(), 0, 1e-12);
            EXPECT_GT(v(arg).real(), 0);
        }
        EXPECT_LE((s.eigenvectors.adjoint() * s.eigenvectors - ComplexMatrix::Identity(8, 8)).norm(), 1e-9);
        EXPECT_LE((a - recon).norm(), 1e-8 * a.norm());
        for (Index i = 1; i < 8; ++i) {
            EXPECT_GE(std::abs(s.eigenvalues(i - 1)), std::abs(s.eigenvalues(i)) - 1e-15);
        }
    }
}

TEST(Eigh, Deterministic) {
    Rng rng(3);
    ComplexMatrix a = random_hermitian(8, 1, rng);
    Spectrum s1 = eigh(a);
    Spectrum s2 = eigh(a);
    EXPECT_TRUE(s1.eigenvalues == s2.eigenvalues);
    EXPECT_TRUE(s1.eigenvectors == s2.eigenvectors);
}

TEST(Eigh, RejectsNonHermitian) {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = 1;
    EXPECT_QPCA_ERROR(eigh(a), ErrorCode::NotHermitian);
}

TEST(MatrixFunction, Identity) {
    Rng rng(4);
    ComplexMatrix a = random_hermitian(6, 1, rng);
    EXPECT_LE((matrix_function(a, [](double x) { return Complex(x); }) - a).norm(), 1e-10);
}

TEST(MatrixFunction, DiagonalExp) {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = M_PI;
    ComplexMatrix f = matrix_function(a, [](double x) { return std::exp(Complex(0, -x / 2)); });
    EXPECT_NEAR(std::abs(f(0, 0) - Complex(0, -1)), 0, 1e-12);
    EXPECT_NEAR(std::abs(f(1, 1) - 1.0), 0, 1e-12);
    EXPECT_NEAR(std::abs(f(0, 1)), 0, 1e-12);
}

TEST(MatrixFunction, Square) {
    Rng rng(5);
    ComplexMatrix a = random_hermitian(8, 2, rng);
    EXPECT_LE((matrix_function(a, [](double x) { return Complex(x * x); }) - a * a).norm(), 1e-9);
}

TEST(MatrixFunction, PropagatesNotHermitian) {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(1, 0) = Complex(0, 1);
    EXPECT_QPCA_ERROR(matrix_function(a, [](double x) { return Complex(x); }), ErrorCode::NotHermitian);
}

TEST(MatrixFunction, ExponentialIsUnitary) {
    Rng rng(6);
    for (double t : {-3.0, 0.1, 1.0, 17.0}) {
        ComplexMatrix h = random_hermitian(8, 1, rng);
        ComplexMatrix u = matrix_function(h, [t](double x) { return std::exp(Complex(0, -x * t)); });
        EXPECT_LE(unitarity_defect(u), 1e-9);
    }
}

TEST(PrincipalLog, IdentityGivesZero) {
    EXPECT_LE(principal_log_unitary(ComplexMatrix::Identity(4, 4)).norm(), 1e-14);
}

TEST(PrincipalLog, DiagonalRoundTrip) {
    ComplexMatrix h = ComplexMatrix::Zero(2, 2);
    h(0, 0) = 0.3;
    h(1, 1) = 0.1;
    ComplexMatrix u = matrix_function(h, [](double x) { return std::exp(Complex(0, -x)); });
    EXPECT_LE((principal_log_unitary(u) - h).norm(), 1e-9);
}

TEST(PrincipalLog, RandomRoundTrip) {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        ComplexMatrix h = random_hermitian(1 + t % 8, 0.5, rng);
        ComplexMatrix u = matrix_function(h, [](double x) { return std::exp(Complex(0, -x)); });
        EXPECT_LE((principal_log_unitary(u) - h).norm(), 1e-8);
    }
}

TEST(PrincipalLog, PhaseWrapRisk) {
    ComplexMatrix u = ComplexMatrix::Identity(2, 2);
    u(0, 0) = std::exp(Complex(0, -3.10));
    EXPECT_QPCA_ERROR(principal_log_unitary(u), ErrorCode::PhaseWrapRisk);
}

TEST(PrincipalLog, RejectsNonUnitary) {
    EXPECT_QPCA_ERROR(principal_log_unitary(ComplexMatrix::Identity(2, 2) * 0.5), ErrorCode::NotUnitary);
}

TEST(DensityMatrix, Validation) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2) * 0.5;
    EXPECT_NO_THROW(DensityMatrix{m});
    EXPECT_QPCA_ERROR(DensityMatrix{ComplexMatrix::Identity(2, 2)}, ErrorCode::NotDensityMatrix);
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_QPCA_ERROR(DensityMatrix{neg}, ErrorCode::NotDensityMatrix);
    EXPECT_QPCA_ERROR(DensityMatrix{ComplexMatrix::Identity(3, 3) / 3.0}, ErrorCode::NotDensityMatrix);
}

TEST(DensityMatrix, PureAndMixed) {
    Rng rng(8);
    ComplexVector psi = random_state(4, rng);
    DensityMatrix p = DensityMatrix::pure(psi);
    EXPECT_NEAR(p.matrix().trace().real(), 1, 1e-12);
    EXPECT_LE((p.matrix() * p.matrix() - p.matrix()).norm(), 1e-12);
    EXPECT_LE((DensityMatrix::maximally_mixed(4).matrix() - ComplexMatrix::Identity(4, 4) / 4.0).norm(), 1e-15);
}

TEST(Linalg, SwapAndPartialTrace) {
    Rng rng(9);
    ComplexMatrix s = swap_matrix(3);
    EXPECT_LE((s * s - ComplexMatrix::Identity(9, 9)).norm(), 0);
    ComplexMatrix a = random_hermitian(3, 1, rng);
    ComplexMatrix b = random_hermitian(2, 1, rng);
    // Tr_1(a (x) b) = Tr(a) b.
    EXPECT_LE((partial_trace_first(kron(a, b), 3, 2) - a.trace() * b).norm(), 1e-12);
}

TEST(Linalg, PhaseDistanceIgnoresGlobalPhase) {
    Rng rng(10);
    ComplexVector v = random_state(5, rng);
    EXPECT_NEAR(phase_distance(std::exp(Complex(0, 1.234)) * v, v), 0, 1e-12);
    ComplexVector w = random_state(5, rng);
    EXPECT_GT(phase_distance(v, w), 0.01);
}

TEST(Linalg, NearestUnitary) {
    Rng rng(11);
    ComplexMatrix u = haar_unitary(4, rng);
    EXPECT_LE((nearest_unitary(u) - u).norm(), 1e-12);
    EXPECT_LE(unitarity_defect(nearest_unitary(random_hermitian(4, 1, rng))), 1e-12);
}

}  // namespace
}  // namespace qpca
