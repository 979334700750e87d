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

#ifndef QPCA_BASELINE_H
#define QPCA_BASELINE_H

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "qpca/linalg.h"

namespace qpca {

/// Outcome probability used by the original-method cost model: the Born
/// weight r, or r^2 as in the squared-amplitude reading.
enum class ProbabilityConvention { Born, Squared };

std::string_view convention_name(ProbabilityConvention c);

struct PeOutcome {
    std::size_t index = 0;
    double probability = 0;
    double r = 0;
    /// r rounded to the 2^-t_bits grid.
    double r_tilde = 0;
    ComplexVector vector;
};

struct SpectralSamplingModel {
    Spectrum spectrum;
    std::size_t t_bits = 0;
    double eps_pe = 0;
    std::vector<PeOutcome> outcomes;
};

SpectralSamplingModel pe_distribution(const DensityMatrix &rho, std::size_t t_bits);

/// clamp(ceil(log2(1/eps)) + 1, 4, 24).
std::size_t default_t_bits(double eps);

enum class Method { Original, New };

std::string_view method_name(Method m);

struct CostParams {
    double r_max = 0.5;
    double r_min = 0.5;
    double gamma = 0.5;
    double eps = 0.1;
    std::size_t R = 1;
    std::size_t n = 2;
    ProbabilityConvention convention = ProbabilityConvention::Born;
};

struct CostReport {
    Method method = Method::Original;
    double copies = 0;
    /// Original: copies ln n. New: R ln n gamma^-3 ln^3(1/eps) / eps^2.
    double depth = 0;
    /// New method only: R ln n gamma^-3 ln^2(1/eps) / eps^3; equals depth otherwise.
    double depth_alt = 0;
    CostParams params;
};

/// Natural logs, unit constants. Original: 1 / (p eps^3) with p the outcome
/// probability of r_max (R = 1) or r_min (R > 1). New: the single-component
/// count (1/gamma^2) ln^2(1/eps) / eps^2, raised to the power R.
CostReport cost_model(Method method, const CostParams &params);

struct SampledComponent {
    std::size_t index = 0;
    double value_grid = 0;
    double value_freq = 0;
    std::size_t count = 0;
    ComplexVector vector;
};

struct SampleResult {
    std::vector<SampledComponent> components;
    std::size_t draws = 0;
    /// Copies per draw, ceil(1/eps^3).
    double copies_per_draw = 0;
    std::vector<std::size_t> counts;
    CostReport empirical;
};

/// Draws outcomes until the R most significant observed eigenvalues each have
/// ceil(1/eps^2) counts. t_bits = 0 selects default_t_bits(eps).
SampleResult sample_components(
    const DensityMatrix &rho, double eps, std::size_t R, std::uint64_t seed, std::size_t t_bits = 0);

/// Raw draws from the outcome distribution (outcome indices).
std::vector<std::size_t> draw_outcomes(const SpectralSamplingModel &model, std::size_t draws, std::uint64_t seed);

}  // namespace qpca

#endif
