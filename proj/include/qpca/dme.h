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

#ifndef QPCA_DME_H
#define QPCA_DME_H

#include <cstddef>
#include <vector>

#include "qpca/blockenc.h"
#include "qpca/linalg.h"

namespace qpca {

struct SwapOperator {
    explicit SwapOperator(std::size_t n) : dim(n), matrix(swap_matrix(n)) {
    }
    std::size_t dim;
    ComplexMatrix matrix;
};

enum class DmeMode { Oracle, SampleFaithful };

struct DmeOptions {
    double c_dme = 1;
};

struct DmeResult {
    std::size_t steps = 0;
    /// N-step transfer matrix acting on row-major vec(sigma).
    ComplexMatrix transfer;
    /// Channel image of the first probe, |0><0|.
    ComplexMatrix channel_output;
    /// exp(-i rho t), for reference.
    ComplexMatrix implied_unitary;
    /// Max trace distance to exact conjugation over the probe set.
    double empirical_error = 0;
    ResourceLedger ledger;
};

/// Tr_1[exp(-iS dt) (rho (x) sigma) exp(iS dt)], computed with the explicit SWAP.
DensityMatrix swap_step(const DensityMatrix &rho, const DensityMatrix &sigma, double dt);

/// Single-step transfer matrix: c^2 I + s^2 vec(rho) vec(I)^T - ics (rho (x) I - I (x) rho^T).
ComplexMatrix swap_step_transfer(const ComplexMatrix &rho, double dt);

/// ceil(c_dme t^2 / eps), at least 1.
std::size_t dme_steps(double t, double eps, double c_dme = 1);

DmeResult exponentiate_density(const DensityMatrix &rho, double t, double eps, const DmeOptions &options = {});
DmeResult exponentiate_density_steps(const DensityMatrix &rho, double t, std::size_t steps);

/// Applies the N-step channel of `result` to sigma.
ComplexMatrix apply_channel(const DmeResult &result, const ComplexMatrix &sigma);

/// Hermitian probes |j><j|, |+_jk><+_jk| and |+i_jk><+i_jk| (n^2 in total).
std::vector<ComplexMatrix> probe_states(std::size_t n);

/// Unitary closest to the channel's dominant Kraus operator, with global phase
/// chosen so that det = exp(-i t) (trace-one rho) and then nearest the identity.
ComplexMatrix effective_unitary(const DmeResult &result, double t);

/// exp(-i rho t) as a self-encoding: exact in oracle mode, the channel's
/// effective unitary in sample-faithful mode. Both charge N copies.
BlockEncoding dme_unitary_encoding(
    const DensityMatrix &rho, double t, double eps, DmeMode mode, const DmeOptions &options = {});

}  // namespace qpca

#endif
