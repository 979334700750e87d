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

#ifndef QPCA_RANDOM_H
#define QPCA_RANDOM_H

#include <cstdint>
#include <random>
#include <vector>

#include "qpca/linalg.h"

namespace qpca {

using Rng = std::mt19937_64;

/// Deterministic stream derivation so that seed k and seed k+1 are unrelated.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

ComplexVector random_state(std::size_t dim, Rng &rng);
ComplexMatrix haar_unitary(std::size_t dim, Rng &rng);
/// Hermitian with i.i.d. complex Gaussian entries, rescaled to spectral norm `norm`.
ComplexMatrix random_hermitian(std::size_t dim, double norm, Rng &rng);
/// V diag(spectrum) V^dagger for Haar V; spectrum is zero-padded to `dim`.
ComplexMatrix planted_matrix(const std::vector<double> &spectrum, std::size_t dim, Rng &rng);
/// Random density matrix with Dirichlet-like random spectrum.
ComplexMatrix random_density(std::size_t dim, Rng &rng);

}  // namespace qpca

#endif
