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

#ifndef QPCA_COVARIANCE_H
#define QPCA_COVARIANCE_H

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "qpca/blockenc.h"
#include "qpca/linalg.h"
#include "qpca/qsvt.h"

namespace qpca {

enum class WeightMode { Uniform, Column };

/// Normalized data points, zero-padded to a power-of-two dimension.
struct Dataset {
    std::size_t n = 0;
    std::size_t original_dim = 0;
    std::vector<ComplexVector> points;
    std::vector<double> weights;
    std::vector<double> raw_norms;

    std::size_t size() const {
        return points.size();
    }
};

/// Normalizes, pads and validates raw points. Empty weights mean uniform.
Dataset make_dataset(const std::vector<ComplexVector> &raw, std::vector<double> weights = {});

/// CSV rows of real or "re:im" fields; with WeightMode::Column the last field
/// is a nonnegative weight. Blank lines and lines starting with '#' are skipped.
Dataset parse_dataset(std::istream &in, WeightMode mode);
Dataset load_dataset(const std::string &path, WeightMode mode);

/// sum_i p_i x_i.
ComplexVector centroid(const Dataset &ds);
/// rho_bar - mu mu^+ when centered, rho_bar otherwise.
ComplexMatrix covariance_classical(const Dataset &ds, bool centered);

/// Householder-based unitary with first column x.
ComplexMatrix state_prep_unitary(const ComplexVector &x);

/// Exact encoding of mu mu^+: purification of the LCU sum_i p_i U_i, with the
/// LCU register reinterpreted as ancillas.
BlockEncoding mean_encoding(const Dataset &ds);

enum class Route { A, B };

struct CovarianceOptions {
    LogMode log_mode = LogMode::Polynomial;
    DensityEncodingOptions density;
};

struct CovarianceBundle {
    ComplexVector centroid;
    DensityMatrix rho_bar;
    ComplexMatrix centered_target;
    /// (pi/8)(rho_bar - mu mu^+) as its block, alpha = 2.
    BlockEncoding encoding;
    Route route;
    ResourceLedger ledger;
};

/// Route B purifies every point exactly; route A replaces the rho_bar encoding
/// by the sample-faithful density pipeline at accuracy eps.
CovarianceBundle covariance_encoding(
    const Dataset &ds, Route route, double eps = 0.01, const CovarianceOptions &options = {});

}  // namespace qpca

#endif
