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

#include "qpca/baseline.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "qpca/error.h"
#include "qpca/random.h"

namespace qpca {

namespace {

constexpr double kNonzero = 1e-12;
constexpr std::size_t kDrawCap = 200'000'000;

}  // namespace

std::string_view convention_name(ProbabilityConvention c) {
    return c == ProbabilityConvention::Born ? "born" : "squared";
}

std::string_view method_name(Method m) {
    return m == Method::Original ? "original" : "new";
}

std::size_t default_t_bits(double eps) {
    double bits = std::ceil(std::log2(1 / eps)) + 1;
    return static_cast<std::size_t>(std::clamp(bits, 4.0, 24.0));
}

SpectralSamplingModel pe_distribution(const DensityMatrix &rho, std::size_t t_bits) {
    if (t_bits < 4 || t_bits > 24) {
        throw Error(ErrorCode::InvalidParameters, "t_bits must lie in [4, 24]");
    }
    SpectralSamplingModel model;
    model.spectrum = eigh(rho.matrix());
    model.t_bits = t_bits;
    double grid = std::ldexp(1.0, static_cast<int>(t_bits));
    model.eps_pe = 1 / grid;
    for (std::size_t i = 0; i < model.spectrum.size(); ++i) {
        PeOutcome o;
        o.index = i;
        o.r = model.spectrum.eigenvalues(static_cast<Eigen::Index>(i));
        o.probability = std::max(0.0, o.r);
        o.r_tilde = std::round(o.r * grid) / grid;
        o.vector = model.spectrum.vector(i);
        model.outcomes.push_back(o);
    }
    return model;
}

std::vector<std::size_t> draw_outcomes(const SpectralSamplingModel &model, std::size_t draws, std::uint64_t seed) {
    std::vector<double> p;
    for (const auto &o : model.outcomes) {
        p.push_back(o.probability);
    }
    std::discrete_distribution<std::size_t> dist(p.begin(), p.end());
    Rng rng(seed);
    std::vector<std::size_t> out(draws);
    for (auto &d : out) {
        d = dist(rng);
    }
    return out;
}

CostReport cost_model(Method method, const CostParams &params) {
    const auto &p = params;
    bool valid = p.eps > 0 && p.eps < 1 && p.gamma > 0 && p.r_max > 0 && p.r_max <= 1 && p.r_min > 0 &&
                 p.r_min <= p.r_max && p.R >= 1 && p.n >= 1;
    if (!valid) {
        throw Error(ErrorCode::InvalidParameters, "cost model needs eps in (0,1), gamma > 0, 0 < r_min <= r_max <= 1");
    }
    CostReport report;
    report.method = method;
    report.params = params;
    double log_n = std::log(static_cast<double>(std::max<std::size_t>(p.n, 2)));
    double log_e = std::log(1 / p.eps);
    if (method == Method::Original) {
        double r = p.R == 1 ? p.r_max : p.r_min;
        double prob = p.convention == ProbabilityConvention::Born ? r : r * r;
        report.copies = 1 / (prob * std::pow(p.eps, 3));
        report.depth = report.copies * log_n;
        report.depth_alt = report.depth;
    } else {
        double single = log_e * log_e / (p.gamma * p.gamma * p.eps * p.eps);
        auto R = static_cast<double>(p.R);
        report.copies = std::pow(single, R);
        double g3 = std::pow(p.gamma, 3);
        report.depth = R * log_n * std::pow(log_e, 3) / (g3 * p.eps * p.eps);
        report.depth_alt = R * log_n * log_e * log_e / (g3 * std::pow(p.eps, 3));
    }
    return report;
}

SampleResult sample_components(
    const DensityMatrix &rho, double eps, std::size_t R, std::uint64_t seed, std::size_t t_bits) {
    if (!(eps > 0) || !(eps < 1)) {
        throw Error(ErrorCode::InvalidAccuracy, "eps must lie in (0, 1)");
    }
    SpectralSamplingModel model = pe_distribution(rho, t_bits == 0 ? default_t_bits(eps) : t_bits);
    std::size_t nonzero = 0;
    for (const auto &o : model.outcomes) {
        nonzero += o.probability > kNonzero ? 1 : 0;
    }
    if (R == 0 || R > nonzero) {
        std::ostringstream msg;
        msg << "R = " << R << " but rho has " << nonzero << " nonzero eigenvalues";
        throw Error(ErrorCode::RankDeficient, msg.str());
    }
    auto target = static_cast<std::size_t>(std::ceil(1 / (eps * eps)));
    std::vector<double> p;
    for (const auto &o : model.outcomes) {
        p.push_back(o.probability);
    }
    std::discrete_distribution<std::size_t> dist(p.begin(), p.end());
    Rng rng(seed);
    SampleResult res;
    res.counts.assign(model.outcomes.size(), 0);
    // Outcomes ranked by grid value, then index; only observed ones qualify.
    auto ranked = [&] {
        std::vector<std::size_t> seen;
        for (std::size_t i = 0; i < res.counts.size(); ++i) {
            if (res.counts[i] > 0) {
                seen.push_back(i);
            }
        }
        std::stable_sort(seen.begin(), seen.end(), [&](std::size_t a, std::size_t b) {
            return model.outcomes[a].r_tilde > model.outcomes[b].r_tilde;
        });
        return seen;
    };
    while (true) {
        ++res.counts[dist(rng)];
        ++res.draws;
        if (res.draws % 64 == 0 || res.draws >= target) {
            auto seen = ranked();
            if (seen.size() >= R &&
                std::all_of(seen.begin(), seen.begin() + static_cast<std::ptrdiff_t>(R), [&](std::size_t i) {
                    return res.counts[i] >= target;
                })) {
                for (std::size_t j = 0; j < R; ++j) {
                    const auto &o = model.outcomes[seen[j]];
                    SampledComponent c;
                    c.index = o.index;
                    c.value_grid = o.r_tilde;
                    c.count = res.counts[seen[j]];
                    c.value_freq = static_cast<double>(c.count) / static_cast<double>(res.draws);
                    c.vector = o.vector;
                    res.components.push_back(c);
                }
                break;
            }
        }
        if (res.draws >= kDrawCap) {
            throw Error(ErrorCode::RankDeficient, "draw cap reached before R components were resolved");
        }
    }
    res.copies_per_draw = std::ceil(1 / (eps * eps * eps));
    CostParams params;
    params.eps = eps;
    params.R = R;
    params.n = rho.dim();
    params.r_max = model.outcomes.front().r;
    params.r_min = model.outcomes[res.components.back().index].r;
    params.gamma = model.spectrum.gap > 0 ? model.spectrum.gap : eps;
    res.empirical.method = Method::Original;
    res.empirical.params = params;
    res.empirical.copies = static_cast<double>(res.draws) * res.copies_per_draw;
    res.empirical.depth = res.empirical.copies * std::log(static_cast<double>(std::max<std::size_t>(rho.dim(), 2)));
    res.empirical.depth_alt = res.empirical.depth;
    return res;
}

}  // namespace qpca
