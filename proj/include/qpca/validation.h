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

#ifndef QPCA_VALIDATION_H
#define QPCA_VALIDATION_H

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "qpca/covariance.h"
#include "qpca/linalg.h"

namespace qpca {

struct CriterionOutcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    std::vector<std::string> tags;
    double budget_seconds;
    std::function<CriterionOutcome(std::uint64_t seed)> run;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    double budget_seconds = 0;
};

/// The ten acceptance criteria, in order.
const std::vector<Criterion> &acceptance_criteria();

/// Runs every criterion whose id or tag appears in `only` (all when empty).
/// Exceeding the runtime budget is a failure. Unknown filters throw InvalidParameters.
std::vector<CriterionResult> run_criteria(
    const std::vector<std::string> &only, std::uint64_t seed, std::ostream *progress = nullptr);

std::string format_result(const CriterionResult &r);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double> &x, const std::vector<double> &y);

/// {r1, r1 - gamma, rest spread evenly}; throws InvalidParameters when the rest
/// would exceed r1 - gamma.
std::vector<double> gap_spectrum(std::size_t dim, double r1, double gamma);

struct DmePoint {
    std::size_t steps = 0;
    double error = 0;
};
std::vector<DmePoint> dme_convergence(const DensityMatrix &rho, double t, const std::vector<std::size_t> &steps);

struct LedgerPoint {
    double eps = 0;
    double gamma = 0;
    double rho_copies = 0;
    double circuit_depth = 0;
    std::size_t k = 0;
};
/// Gaps 0.005 * 2^(j/2), j = 0..10: small against r1 = 0.5 so that
/// log(r1/r2) stays close to linear in gamma.
std::vector<double> ledger_gamma_grid();

/// qpca_top on a planted spectrum gap_spectrum(dim, 0.5, gamma), oracle mode.
std::vector<LedgerPoint> copies_vs_eps(
    std::size_t dim, double gamma, const std::vector<double> &eps, std::uint64_t seed);
std::vector<LedgerPoint> copies_vs_gamma(
    std::size_t dim, double eps, const std::vector<double> &gammas, std::uint64_t seed);

/// Real points around `clusters` random centers.
std::vector<ComplexVector> cluster_points(std::size_t dim, std::size_t count, std::size_t clusters, std::uint64_t seed);

}  // namespace qpca

#endif
