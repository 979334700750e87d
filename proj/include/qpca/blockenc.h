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

#ifndef QPCA_BLOCKENC_H
#define QPCA_BLOCKENC_H

#include <cstddef>
#include <vector>

#include "qpca/linalg.h"

namespace qpca {

/// Cost counters. Counts are stored as doubles: deflation accounting grows
/// exponentially in the number of components and overflows 64-bit integers.
struct ResourceLedger {
    double rho_copies = 0;
    double circuit_depth = 0;
    double ancilla_qubits = 0;
    double unitary_calls = 0;

    ResourceLedger &operator+=(const ResourceLedger &other);
    friend ResourceLedger operator+(ResourceLedger a, const ResourceLedger &b) {
        a += b;
        return a;
    }
    ResourceLedger scaled(double factor) const;
    bool operator==(const ResourceLedger &other) const = default;
};

/// Stored unitaries larger than this are replaced by the one-qubit canonical
/// dilation of their top-left block.
inline constexpr std::size_t kExplicitDimCap = 256;

/// A unitary U whose top-left target_dim x target_dim block B (all ancillas
/// projected onto |0...0>) satisfies |alpha * B - A| <= eps for the encoded
/// operator A.
///
/// `ancillas` is the logical ancilla count of the circuit the encoding models.
/// When the composed unitary would exceed kExplicitDimCap it is stored as the
/// canonical dilation [[B, sqrt(I - BB^+)], [sqrt(I - B^+B), -B^+]], so the
/// physical register (`register_qubits()`) can be smaller than `ancillas`.
class BlockEncoding {
   public:
    BlockEncoding(
        ComplexMatrix unitary,
        double alpha,
        std::size_t ancillas,
        double eps,
        std::size_t target_dim,
        ResourceLedger ledger);

    const ComplexMatrix &unitary() const {
        return unitary_;
    }
    double alpha() const {
        return alpha_;
    }
    std::size_t ancillas() const {
        return ancillas_;
    }
    double eps() const {
        return eps_;
    }
    std::size_t target_dim() const {
        return target_dim_;
    }
    const ResourceLedger &ledger() const {
        return ledger_;
    }
    std::size_t register_qubits() const;
    bool is_dilated() const {
        return register_qubits() != ancillas_;
    }

    BlockEncoding with_eps(double eps) const;
    BlockEncoding with_alpha(double alpha) const;
    BlockEncoding with_ledger(ResourceLedger ledger) const;

   private:
    ComplexMatrix unitary_;
    double alpha_;
    std::size_t ancillas_;
    double eps_;
    std::size_t target_dim_;
    ResourceLedger ledger_;
};

/// Unitary whose first column is the unit vector x (Householder reflection
/// times a phase; identity when x = e_0).
ComplexMatrix unitary_with_first_column(const ComplexVector &x);

/// Canonical unitary completion of a contraction (|B| <= 1).
ComplexMatrix unitary_dilation(const ComplexMatrix &block);

BlockEncoding encode_self(const ComplexMatrix &u, double depth = 1);
/// Encoding of alpha * block realized by unitary_dilation.
BlockEncoding encode_block(
    const ComplexMatrix &block, double alpha = 1, double eps = 0, std::size_t ancillas = 1, ResourceLedger ledger = {});

ComplexMatrix extract_block(const BlockEncoding &be);
/// |alpha * extract_block(be) - target|_2.
double block_error(const BlockEncoding &be, const ComplexMatrix &target);

/// Encoding of A1 A2: alpha = a1 a2, eps = a1 e2 + a2 e1.
BlockEncoding product(const BlockEncoding &be1, const BlockEncoding &be2);

/// Encoding of sum_i sign_i w_i A_i with alpha = sum_i w_i alpha_i and
/// eps = sum_i w_i eps_i. The weight register is prepared with amplitudes
/// sqrt(w_i alpha_i / alpha).
BlockEncoding lcu(const std::vector<double> &weights, const std::vector<BlockEncoding> &bes, const std::vector<int> &signs);
BlockEncoding lcu(const std::vector<double> &weights, const std::vector<BlockEncoding> &bes);

/// Encoding of the Kronecker product of the encoded operators.
BlockEncoding tensor(const std::vector<BlockEncoding> &bes);

/// Encoding of A / p, realized as (R_Y(theta) (x) I) * U with cos(theta/2) = 1/p.
BlockEncoding scale_down(const BlockEncoding &be, double p);

/// Exact encoding of Tr_A |Phi><Phi| where |Phi> = prep |0>_A |0>_B, built as
/// (prep^+ (x) I)(I_A (x) SWAP_{B,B'})(prep (x) I).
BlockEncoding purify_density(const ComplexMatrix &prep, std::size_t dim_a, std::size_t dim_b, double prep_depth = 1);

/// Encoding of A^dagger.
BlockEncoding adjoint(const BlockEncoding &be);
/// Encoding of phase * A (|phase| = 1).
BlockEncoding with_phase(const BlockEncoding &be, Complex phase);
/// Treat the `qubits` outermost target qubits as ancillas; the new target is
/// the top-left sub-block.
BlockEncoding reinterpret_as_ancilla(const BlockEncoding &be, std::size_t qubits);
/// Same block, stored as its one-qubit dilation.
BlockEncoding compress(const BlockEncoding &be);

/// R_Y(theta) = [[cos, -sin], [sin, cos]] of theta/2.
ComplexMatrix ry(double theta);

}  // namespace qpca

#endif
