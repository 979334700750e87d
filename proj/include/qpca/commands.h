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

#ifndef QPCA_COMMANDS_H
#define QPCA_COMMANDS_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qpca/covariance.h"
#include "qpca/power.h"
#include "qpca/report.h"

namespace qpca {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitGap = 3 };

struct RunConfig {
    // analyze
    std::vector<double> spectrum;
    std::size_t dim = 0;
    std::string data;
    WeightMode weights = WeightMode::Uniform;
    bool centered = true;
    std::size_t R = 1;
    double eps = 0.01;
    Route route = Route::B;
    DmeMode mode = DmeMode::Oracle;
    LogMode log_mode = LogMode::Oracle;
    double gap_floor = 1e-3;
    double c_dme = 1;
    double c_k = 1;
    std::uint64_t seed = kDefaultSeed;
    std::string output = "-";
    // compare
    std::string regime = "both";
    /// Unset lists fall back to the default grids.
    std::optional<std::vector<double>> gammas;
    std::optional<std::vector<double>> r_mins;
    std::optional<std::vector<double>> eps_list;
    std::optional<std::vector<std::size_t>> R_list;
    double gap_eps = 0.1;
    std::size_t gap_R = 2;
    double r_max = 0.5;
    std::size_t n = 16;
    bool empirical = false;
    // validate
    std::vector<std::string> only;
    // bench
    std::string bench = "dme";
};

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Applies key=value settings in order; keys use the long flag names
/// (eps, R, route, mode, log-mode, seed, gap-floor, c-dme, c-k, spectrum, dim,
/// data, weights, centered, output, regime, gammas, r-mins, eps-list, R-list,
/// gap-eps, gap-R, r-max, n, empirical, only, bench). Throws ParseError/InvalidParameters.
void apply_entries(RunConfig &config, const ConfigEntries &entries);

/// key = value lines; '#' starts a comment.
ConfigEntries read_config_file(const std::string &path);

/// Seed from QPCA_SEED when set.
void apply_environment(RunConfig &config);

Json config_json(const RunConfig &config);

struct AnalyzeResult {
    Json report;
    int exit_code = kExitOk;
};

/// Runs the pipeline; throws Error for configuration and input failures.
AnalyzeResult analyze(const RunConfig &config);
/// CSV regime table.
std::string compare_table(const RunConfig &config);
std::string bench_table(const RunConfig &config);

/// Command entry points: write to config.output (or `out` for "-"), report
/// errors on `err`, and return the exit code.
int cmd_analyze(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_compare(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_validate(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_bench(const RunConfig &config, std::ostream &out, std::ostream &err);

}  // namespace qpca

#endif
