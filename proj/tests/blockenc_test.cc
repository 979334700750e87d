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

#include <gtest/gtest.h>

#include <cmath>

#include "qpca/random.h"
#include "test_util.h"

namespace qpca {
namespace {

using Index = Eigen::Index;

ComplexMatrix pauli_x() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(1, 1) = -1;
    return m;
}

ComplexMatrix hadamard() {
    return (pauli_x() + pauli_z()) / std::sqrt(2.0);
}

// Hermitian contraction with norm `norm`.
ComplexMatrix hermitian(std::size_t dim, double norm, Rng &rng) {
    return random_hermitian(dim, norm, rng);
}

TEST(EncodeSelf, Identity) {
    BlockEncoding be = encode_self(ComplexMatrix::Identity(4, 4));
    EXPECT_EQ(be.alpha(), 1);
    EXPECT_EQ(be.ancillas(), 0u);
    EXPECT_EQ(be.eps(), 0);
    EXPECT_LE((extract_block(be) - ComplexMatrix::Identity(4, 4)).norm(), 0);
}

TEST(EncodeSelf, NoAncillaMeansWholeMatrix) {
    ComplexMatrix hh = kron(hadamard(), hadamard());
    EXPECT_LE((extract_block(encode_self(hh)) - hh).norm(), 1e-15);
}

TEST(EncodeSelf, RandomUnitary) {
    Rng rng(1);
    ComplexMatrix u = haar_unitary(8, rng);
    EXPECT_LE((extract_block(encode_self(u)) - u).norm(), 1e-12);
}

TEST(EncodeSelf, RejectsNonUnitary) {
    EXPECT_QPCA_ERROR(encode_self(ComplexMatrix::Identity(2, 2) * 0.9), ErrorCode::NotUnitary);
}

TEST(BlockEncoding, ConstructorValidates) {
    ComplexMatrix u = ComplexMatrix::Identity(4, 4);
    EXPECT_QPCA_ERROR(BlockEncoding(u, 1, 1, 0, 3, {}), ErrorCode::DimensionMismatch);
    EXPECT_QPCA_ERROR(BlockEncoding(u, 0, 1, 0, 2, {}), ErrorCode::InvalidScale);
    EXPECT_QPCA_ERROR(BlockEncoding(u, 1, 1, -1, 2, {}), ErrorCode::InvalidAccuracy);
    EXPECT_QPCA_ERROR(BlockEncoding(u * 2.0, 1, 1, 0, 2, {}), ErrorCode::NotUnitary);
}

TEST(Dilation, ContractionIsCompletedToUnitary) {
    Rng rng(2);
    for (int t = 0; t < 10; ++t) {
        ComplexMatrix b = haar_unitary(4, rng).topLeftCorner(4, 4) * 0.7;
        b(0, 1) += 0.1;
        b /= std::max(1.0, spectral_norm(b));
        ComplexMatrix u = unitary_dilation(b);
        EXPECT_LE(unitarity_defect(u), 1e-10);
        EXPECT_LE((u.topLeftCorner(4, 4) - b).norm(), 1e-12);
    }
    ComplexMatrix h = hermitian(4, 1.0, rng);
    EXPECT_LE(unitarity_defect(unitary_dilation(h)), 1e-10);
}

TEST(Dilation, FirstColumnUnitary) {
    Rng rng(3);
    ComplexVector x = random_state(6, rng);
    ComplexMatrix u = unitary_with_first_column(x);
    EXPECT_LE(unitarity_defect(u), 1e-12);
    EXPECT_LE((u.col(0) - x).norm(), 1e-12);
    EXPECT_QPCA_ERROR(unitary_with_first_column(2.0 * x), ErrorCode::NotUnitNorm);
}

TEST(Product, InversePair) {
    Rng rng(4);
    ComplexMatrix u = haar_unitary(4, rng);
    BlockEncoding be = product(encode_self(u), encode_self(u.adjoint()));
    EXPECT_LE((extract_block(be) - ComplexMatrix::Identity(4, 4)).norm(), 1e-10);
}

TEST(Product, SquareOfHermitian) {
    Rng rng(5);
    ComplexMatrix a = hermitian(4, 0.9, rng);
    BlockEncoding be = encode_block(a);
    BlockEncoding sq = product(be, be);
    EXPECT_EQ(sq.eps(), 0);
    EXPECT_LE(spectral_norm(extract_block(sq) - matrix_function(a, [](double x) { return Complex(x * x); })), 1e-10);
    EXPECT_EQ(sq.ancillas(), 2u);
}

TEST(Product, ErrorAccumulatesLinearly) {
    Rng rng(6);
    ComplexMatrix a = hermitian(4, 0.8, rng);
    const double eps = 1e-4;
    BlockEncoding be = encode_block(a + ComplexMatrix::Identity(4, 4) * eps, 1, eps);
    BlockEncoding acc = be;
    for (int k = 2; k <= 5; ++k) {
        acc = product(acc, be);
        EXPECT_NEAR(acc.eps(), k * eps, 1e-15);
        ComplexMatrix ak = ComplexMatrix::Identity(4, 4);
        for (int j = 0; j < k; ++j) {
            ak = ak * a;
        }
        EXPECT_LE(block_error(acc, ak), acc.eps() + 1e-12);
    }
}

TEST(Product, AlphaAndEpsFormula) {
    Rng rng(7);
    BlockEncoding a = encode_block(hermitian(2, 0.5, rng), 2.0, 0.01);
    BlockEncoding b = encode_block(hermitian(2, 0.5, rng), 3.0, 0.02);
    BlockEncoding p = product(a, b);
    EXPECT_DOUBLE_EQ(p.alpha(), 6.0);
    EXPECT_DOUBLE_EQ(p.eps(), 2.0 * 0.02 + 3.0 * 0.01);
}

TEST(Product, DimensionMismatch) {
    EXPECT_QPCA_ERROR(
        product(encode_self(ComplexMatrix::Identity(2, 2)), encode_self(ComplexMatrix::Identity(4, 4))),
        ErrorCode::DimensionMismatch);
}

TEST(Product, LedgerAdds) {
    BlockEncoding a = encode_self(ComplexMatrix::Identity(2, 2), 3);
    BlockEncoding b = encode_self(ComplexMatrix::Identity(2, 2), 5);
    ResourceLedger sum = a.ledger() + b.ledger();
    EXPECT_EQ(product(a, b).ledger(), sum);
}

TEST(Lcu, Singleton) {
    Rng rng(8);
    BlockEncoding be = encode_block(hermitian(4, 0.6, rng), 1.5, 0.001);
    BlockEncoding s = lcu({1}, {be});
    EXPECT_LE((extract_block(s) - extract_block(be)).norm(), 1e-12);
    EXPECT_DOUBLE_EQ(s.alpha(), be.alpha());
}

TEST(Lcu, SignedPair) {
    Rng rng(9);
    ComplexMatrix u = haar_unitary(4, rng);
    BlockEncoding be = lcu({1, 1}, {encode_self(u), encode_self(-u)}, {1, -1});
    EXPECT_LE((extract_block(be) - u).norm(), 1e-10);
    EXPECT_DOUBLE_EQ(be.alpha(), 2.0);
    EXPECT_EQ(be.eps(), 0);
}

TEST(Lcu, DeflationCombination) {
    Rng rng(10);
    ComplexMatrix rho = random_density(4, rng);
    Spectrum s = eigh(rho);
    double r1 = s.eigenvalues(0);
    ComplexVector v = s.vector(0);
    BlockEncoding a = encode_block(M_PI / 4 * rho);
    BlockEncoding b = encode_block(M_PI / 4 * r1 * v * v.adjoint());
    BlockEncoding d = lcu({1, 1}, {a, b}, {1, -1});
    ComplexMatrix expected = M_PI / 8 * (rho - r1 * v * v.adjoint());
    EXPECT_LE(spectral_norm(extract_block(d) - expected), 1e-10);
}

TEST(Lcu, ErrorsAndLedger) {
    BlockEncoding a = encode_self(ComplexMatrix::Identity(2, 2), 2);
    EXPECT_QPCA_ERROR(lcu({}, {}), ErrorCode::EmptyCombination);
    EXPECT_QPCA_ERROR(lcu({1, 1}, {a, encode_self(ComplexMatrix::Identity(4, 4))}), ErrorCode::DimensionMismatch);
    BlockEncoding c = lcu({1, 1, 1}, {a, a, a});
    EXPECT_EQ(c.ancillas(), 2u);
    EXPECT_DOUBLE_EQ(c.ledger().circuit_depth, 3 * 2 + 2 * 2);
}

TEST(Lcu, WeightedRandomCombination) {
    Rng rng(11);
    std::vector<double> w{0.3, 1.7, 0.9};
    std::vector<int> signs{1, -1, 1};
    std::vector<BlockEncoding> bes;
    ComplexMatrix target = ComplexMatrix::Zero(4, 4);
    for (std::size_t i = 0; i < 3; ++i) {
        ComplexMatrix a = hermitian(4, 0.7, rng);
        double alpha = 1.0 + static_cast<double>(i);
        bes.push_back(encode_block(a, alpha, 0.002));
        target += signs[i] * w[i] * alpha * a;
    }
    BlockEncoding c = lcu(w, bes, signs);
    EXPECT_DOUBLE_EQ(c.alpha(), 0.3 * 1 + 1.7 * 2 + 0.9 * 3);
    EXPECT_DOUBLE_EQ(c.eps(), (0.3 + 1.7 + 0.9) * 0.002);
    EXPECT_LE(block_error(c, target), 1e-10);
}

TEST(Tensor, Singleton) {
    Rng rng(12);
    BlockEncoding be = encode_block(hermitian(2, 0.5, rng), 2, 0.01);
    BlockEncoding t = tensor({be});
    EXPECT_LE((extract_block(t) - extract_block(be)).norm(), 1e-15);
    EXPECT_EQ(t.eps(), be.eps());
}

TEST(Tensor, PauliProduct) {
    BlockEncoding t = tensor({encode_self(pauli_x()), encode_self(pauli_z())});
    EXPECT_LE((extract_block(t) - kron(pauli_x(), pauli_z())).norm(), 1e-15);
}

TEST(Tensor, RotationGivesCosine) {
    double theta = 1.1;
    BlockEncoding t = tensor({encode_self(ry(theta)), encode_self(ComplexMatrix::Identity(4, 4))});
    ComplexMatrix top = t.unitary().topLeftCorner(4, 4);
    EXPECT_LE((top - std::cos(theta / 2) * ComplexMatrix::Identity(4, 4)).norm(), 1e-14);
}

TEST(Tensor, EncodedBlocksAndError) {
    Rng rng(13);
    ComplexMatrix a = hermitian(2, 0.5, rng);
    ComplexMatrix b = hermitian(4, 0.5, rng);
    BlockEncoding ea = encode_block(a, 2, 0.01);
    BlockEncoding eb = encode_block(b, 3, 0.02);
    BlockEncoding t = tensor({ea, eb});
    EXPECT_DOUBLE_EQ(t.alpha(), 6);
    EXPECT_DOUBLE_EQ(t.eps(), 0.01 * 3 + 0.02 * 2);
    EXPECT_EQ(t.target_dim(), 8u);
    EXPECT_LE(block_error(t, 6.0 * kron(a, b)), 1e-12);
    EXPECT_QPCA_ERROR(tensor({}), ErrorCode::EmptyCombination);
}

TEST(ScaleDown, HalfIdentity) {
    BlockEncoding s = scale_down(encode_self(ComplexMatrix::Identity(2, 2)), 2);
    EXPECT_LE((extract_block(s) - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 1e-10);
}

TEST(ScaleDown, QuarterAndComposition) {
    Rng rng(14);
    ComplexMatrix a = hermitian(4, 0.9, rng);
    BlockEncoding be = encode_block(a, 1, 0.004);
    BlockEncoding q = scale_down(be, 4);
    EXPECT_LE((extract_block(q) - a / 4.0).norm(), 1e-9);
    EXPECT_DOUBLE_EQ(q.eps(), 0.001);
    BlockEncoding pq = scale_down(scale_down(be, 1.5), 3);
    EXPECT_LE((extract_block(pq) - a / 4.5).norm(), 1e-9);
    EXPECT_DOUBLE_EQ(pq.alpha(), 1.0);
}

TEST(ScaleDown, InvalidScale) {
    BlockEncoding be = encode_self(ComplexMatrix::Identity(2, 2));
    EXPECT_QPCA_ERROR(scale_down(be, 1.0), ErrorCode::InvalidScale);
    EXPECT_QPCA_ERROR(scale_down(be, 0.5), ErrorCode::InvalidScale);
}

TEST(Purify, ProductState) {
    BlockEncoding be = purify_density(ComplexMatrix::Identity(4, 4), 2, 2);
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 0) = 1;
    EXPECT_LE((extract_block(be) - expected).norm(), 1e-12);
    EXPECT_EQ(be.eps(), 0);
    EXPECT_DOUBLE_EQ(be.ledger().unitary_calls, 2);
}

TEST(Purify, BellPairGivesMaximallyMixed) {
    // CNOT (H (x) I) prepares a Bell pair from |00>.
    ComplexMatrix cnot = ComplexMatrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
    ComplexMatrix prep = cnot * kron(hadamard(), ComplexMatrix::Identity(2, 2));
    BlockEncoding be = purify_density(prep, 2, 2);
    EXPECT_LE((extract_block(be) - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 1e-10);
}

TEST(Purify, RandomPrepMatchesPartialTrace) {
    Rng rng(15);
    for (std::size_t da : {1, 2, 4}) {
        ComplexMatrix prep = haar_unitary(da * 4, rng);
        ComplexVector phi = prep.col(0);
        BlockEncoding be = purify_density(prep, da, 4);
        EXPECT_LE((extract_block(be) - partial_trace_first(phi * phi.adjoint(), da, 4)).norm(), 1e-10);
    }
}

TEST(Purify, Errors) {
    EXPECT_QPCA_ERROR(purify_density(ComplexMatrix::Identity(4, 4), 2, 3), ErrorCode::BadRegisterSplit);
    EXPECT_QPCA_ERROR(purify_density(ComplexMatrix::Identity(4, 4) * 0.5, 2, 2), ErrorCode::NotUnitary);
}

TEST(Helpers, AdjointPhaseReinterpret) {
    Rng rng(16);
    ComplexMatrix u = haar_unitary(4, rng);
    EXPECT_LE((extract_block(adjoint(encode_self(u))) - u.adjoint()).norm(), 1e-12);
    Complex ph = std::exp(Complex(0, 0.7));
    EXPECT_LE((extract_block(with_phase(encode_self(u), ph)) - ph * u).norm(), 1e-12);
    BlockEncoding r = reinterpret_as_ancilla(encode_self(u), 1);
    EXPECT_EQ(r.target_dim(), 2u);
    EXPECT_LE((extract_block(r) - u.topLeftCorner(2, 2)).norm(), 1e-12);
    BlockEncoding c = compress(lcu({1, 1}, {encode_self(u), encode_self(u.adjoint())}));
    EXPECT_EQ(c.register_qubits(), 1u);
    EXPECT_LE((extract_block(c) - (u + u.adjoint()) / 2.0).norm(), 1e-10);
}

TEST(Ledger, AdditionCommutativeAssociative) {
    ResourceLedger a{1, 2, 3, 4};
    ResourceLedger b{5, 6, 7, 8};
    ResourceLedger c{0.5, 0, 1, 2};
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    // Repetition multiplies everything but the (reused) ancilla register.
    ResourceLedger twice = a.scaled(2);
    EXPECT_EQ(twice.rho_copies, 2);
    EXPECT_EQ(twice.circuit_depth, 4);
    EXPECT_EQ(twice.ancilla_qubits, 3);
    EXPECT_EQ(twice.unitary_calls, 8);
}

// Randomized combinator property: unitarity and the claimed error bound.
TEST(Property, CombinatorsRespectClaimedError) {
    Rng rng(17);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 60; ++t) {
        std::size_t dim = std::size_t{2} << (t % 3);
        double eps1 = 0.01 * u(rng);
        double eps2 = 0.01 * u(rng);
        ComplexMatrix a1 = hermitian(dim, 0.8, rng);
        ComplexMatrix a2 = hermitian(dim, 0.8, rng);
        ComplexMatrix e1 = hermitian(dim, eps1, rng);
        ComplexMatrix e2 = hermitian(dim, eps2, rng);
        BlockEncoding b1 = encode_block(a1 + e1, 1, eps1);
        BlockEncoding b2 = encode_block((a2 + e2) / 2.0, 2, eps2);
        std::vector<std::pair<BlockEncoding, ComplexMatrix>> cases{
            {product(b1, b2), a1 * a2},
            {lcu({0.4, 0.6}, {b1, b2}, {1, -1}), 0.4 * a1 - 0.6 * a2},
            {tensor({b1, b2}), kron(a1, a2)},
            {scale_down(b2, 3.3), a2 / 3.3},
        };
        for (const auto &[be, target] : cases) {
            EXPECT_LE(unitarity_defect(be.unitary()), 1e-9);
            EXPECT_LE(block_error(be, target), be.eps() + 1e-9);
        }
    }
}

TEST(Dilated, LargeEncodingsKeepLogicalAncillas) {
    Rng rng(18);
    BlockEncoding be = encode_block(hermitian(16, 0.5, rng));
    BlockEncoding big = product(product(product(be, be), be), be);
    EXPECT_EQ(big.ancillas(), 4u);
    EXPECT_LE(static_cast<std::size_t>(big.unitary().rows()), kExplicitDimCap);
    ComplexMatrix b = extract_block(be);
    EXPECT_LE((extract_block(big) - b * b * b * b).norm(), 1e-10);
}

}  // namespace
}  // namespace qpca
