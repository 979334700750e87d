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

#ifndef QPCA_ERROR_H
#define QPCA_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace qpca {

enum class ErrorCode {
    NotHermitian,
    NotUnitary,
    PhaseWrapRisk,
    DimensionMismatch,
    EmptyCombination,
    InvalidScale,
    BadRegisterSplit,
    InvalidAccuracy,
    SupNormViolation,
    NotHermitianTarget,
    PhaseOutOfRange,
    InvalidParameters,
    ZeroVector,
    ZeroMatrixPower,
    GapTooSmall,
    InvalidEigenvalue,
    ParseError,
    EmptyDataset,
    NegativeWeight,
    WeightSumZero,
    NotUnitNorm,
    RankDeficient,
    NotDensityMatrix,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library. `code()` identifies the contract that
/// was violated; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &detail)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code) {
    }
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace qpca

#endif
