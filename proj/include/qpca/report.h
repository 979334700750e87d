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

#ifndef QPCA_REPORT_H
#define QPCA_REPORT_H

#include <nlohmann/json.hpp>

#include "qpca/baseline.h"
#include "qpca/blockenc.h"
#include "qpca/covariance.h"
#include "qpca/linalg.h"
#include "qpca/power.h"

namespace qpca {

using Json = nlohmann::ordered_json;

inline constexpr const char *kVersion = "0.1.0";

/// Complex numbers as [re, im] pairs; matrices row-major.
Json to_json(Complex z);
Json to_json(const ComplexVector &v);
Json to_json(const ComplexMatrix &m);
Json to_json(const RealVector &v);
Json to_json(const ResourceLedger &ledger);
/// Debug dump: unitary, alpha, ancillas, eps, target_dim, ledger.
Json to_json(const BlockEncoding &be);
/// Centroid, spectrum of the centered target, route, ledger.
Json to_json(const CovarianceBundle &bundle);
Json to_json(const CostReport &report);
Json to_json(const EigenEstimate &estimate);

ComplexMatrix matrix_from_json(const Json &j);

}  // namespace qpca

#endif
