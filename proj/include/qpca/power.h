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

#ifndef QPCA_POWER_H
#define QPCA_POWER_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "qpca/blockenc.h"
#include "qpca/error.h"
#include "qpca/linalg.h"
#include "qpca/qsvt.h"

namespace qpca {

inline constexpr std::uint64_t kDefaultSeed = 0x51a7e5eedULL;

struct EigenEstimate {
    double value = 0;
    ComplexVector vector;
    /// |A x - value x| against the operator the stage targets.
    double residual = 0;
    ResourceLedger ledger;
    /// Power of the encoding used for the final state.
    std::size_t k = 0;
};

struct ComponentList {
    std::vector<EigenEstimate> components;
    ResourceLedger total_ledger;
};

/// GapTooSmall carrying whatever components were found before the failure.
class GapTooSmallError : public Error {
   public:
    GapTooSmallError(const std::string &detail, ComponentList partial)
        : Error(ErrorCode::GapTooSmall, detail), partial_(std::move(partial)) {
    }
    const ComponentList &partial() const {
        return partial_;
    }

   private:
    ComponentList partial_;
};

struct ShotModel {
    enum class Kind { Exact, Sampled };
    Kind kind = Kind::Exact;
    std::uint64_t seed = kDefaultSeed;
    double c_shots = 16;
};

struct PowerOptions {
    std::uint64_t seed = kDefaultSeed;
    double gap_floor = 1e-3;
    /// Constant in k_max = c_k (1/gap_floor) ln(1/eps).
    double c_k = 1;
    double c_amp = 1;
    int max_reseeds = 8;
    DmeMode dme_mode = DmeMode::Oracle;
    LogMode log_mode = LogMode::Oracle;
    DensityEncodingOptions density;
    ShotModel shots;
};

/// x_k = A^k x0, normalized; value = <x_k|A|x_k>.
EigenEstimate classical_power_method(const ComplexMatrix &a, const ComplexVector &x0, std::size_t k);

struct PowerState {
    ComplexVector state;
    /// ln |B^k x0| for the encoded block B.
    double log_subnormalization = 0;
    ResourceLedger ledger;
};

/// Applies the k-th power of the encoded block to x0 with renormalization after
/// every step. The ledger is that of the k-fold product (rho copies charged
/// once) plus amplification by gamma = 1/|B^k x0|.
PowerState quantum_power_state(
    const BlockEncoding &be, std::size_t k, double eps, const ComplexVector &x0, double c_amp = 1);

struct ValueEstimate {
    double value = 0;
    ResourceLedger ledger;
};

/// alpha <state|B|state> / scale. Sampled mode runs a Hadamard test with
/// ceil(c_shots / e^2) shots, e being eps in block units.
ValueEstimate estimate_top_eigenvalue(
    const BlockEncoding &be, const ComplexVector &state, double eps, const ShotModel &shots, double scale = 1);

/// Builds the stage encoding at a requested accuracy. Every stage encoding
/// presents (pi/4) X for the operator X under analysis.
using EncodingBuilder = std::function<BlockEncoding(double accuracy)>;

/// Adaptive power method on one stage. `target` is X, used only for the residual.
EigenEstimate power_stage(
    const EncodingBuilder &build, const ComplexMatrix &target, double eps, const PowerOptions &options = {});

EigenEstimate qpca_top(const RhoSource &source, double eps, const PowerOptions &options = {});

/// Encoding of (pi/4)(X - r v v^+) with alpha = alpha_X + 1, from an encoding
/// of (pi/4) X. `v_copy_cost` is the rho-copies needed per copy of |v>.
BlockEncoding deflate(
    const BlockEncoding &be,
    double r,
    const ComplexVector &v,
    double vec_copies_eps,
    const PowerOptions &options = {},
    double v_copy_cost = 1);

ComponentList qpca_components(const RhoSource &source, std::size_t R, double eps, const PowerOptions &options = {});
/// Same, starting from an arbitrary first-stage builder presenting (pi/4) X.
ComponentList qpca_components(
    const EncodingBuilder &first_stage,
    const ComplexMatrix &target,
    std::size_t R,
    double eps,
    const PowerOptions &options = {});

}  // namespace qpca

#endif
