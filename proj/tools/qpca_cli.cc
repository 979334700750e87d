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


// qpca command line: analyze, compare, validate, bench.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qpca/commands.h"
#include "qpca/error.h"

namespace {

struct Flag {
    const char *key;
    const char *help;
};

const std::vector<Flag> kAnalyzeFlags{
    {"spectrum", "comma-separated eigenvalues of a planted density matrix"},
    {"dim", "dimension for --spectrum (power of two)"},
    {"data", "CSV dataset, one point per row (re or re:im fields)"},
    {"weights", "uniform | column"},
    {"centered", "subtract the mean (true/false)"},
    {"R", "number of components"},
    {"eps", "target accuracy in (0, 1/2)"},
    {"route", "A | B"},
    {"mode", "oracle | sample-faithful"},
    {"log-mode", "oracle | polynomial"},
    {"gap-floor", "smallest gap assumed by the power schedule"},
    {"c-dme", "DME step constant"},
    {"c-k", "power iteration constant"},
    {"seed", "RNG seed (decimal or 0x hex)"},
    {"output", "report path, - for stdout"},
};

const std::vector<Flag> kCompareFlags{
    {"regime", "uniform | gap | both"},
    {"gammas", "gap grid"},
    {"r-mins", "r_min grid"},
    {"eps-list", "uniform-regime eps grid"},
    {"R-list", "uniform-regime R grid"},
    {"gap-eps", "eps for the gap regime"},
    {"gap-R", "R for the gap regime"},
    {"r-max", "largest eigenvalue"},
    {"n", "dimension used in depth formulas"},
    {"empirical", "also sample the original method (true/false)"},
    {"seed", "RNG seed"},
    {"output", "CSV path, - for stdout"},
};

const std::vector<Flag> kValidateFlags{
    {"only", "comma-separated criterion ids or tags"},
    {"seed", "RNG seed"},
    {"output", "result path, - for stdout"},
};

const std::vector<Flag> kBenchFlags{
    {"bench", "dme | ledger | all"},
    {"seed", "RNG seed"},
    {"output", "CSV path, - for stdout"},
};

using Values = std::map<std::string, std::string>;

void add_flags(CLI::App *app, const std::vector<Flag> &flags, Values &values) {
    for (const auto &f : flags) {
        app->add_option(std::string("--") + f.key, values[f.key], f.help);
    }
}

qpca::ConfigEntries given(CLI::App *app, const std::vector<Flag> &flags, const Values &values) {
    qpca::ConfigEntries entries;
    for (const auto &f : flags) {
        if (app->count(std::string("--") + f.key) > 0) {
            entries.emplace_back(f.key, values.at(f.key));
        }
    }
    return entries;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qpca: quantum principal component analysis simulator"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key = value settings file (flags win)");

    Values av, cv, vv, bv;
    bool uncentered = false;
    bool empirical = false;
    auto *analyze = app.add_subcommand("analyze", "estimate principal components");
    add_flags(analyze, kAnalyzeFlags, av);
    analyze->add_flag("--uncentered", uncentered, "same as --centered false");
    auto *compare = app.add_subcommand("compare", "cost table for the two methods");
    add_flags(compare, kCompareFlags, cv);
    compare->add_flag("--sample", empirical, "same as --empirical true");
    auto *validate = app.add_subcommand("validate", "run the acceptance criteria");
    add_flags(validate, kValidateFlags, vv);
    auto *bench = app.add_subcommand("bench", "convergence and scaling sweeps");
    add_flags(bench, kBenchFlags, bv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? qpca::kExitOk : qpca::kExitConfig;
    }

    qpca::RunConfig config;
    try {
        qpca::apply_environment(config);
        if (!config_path.empty()) {
            qpca::apply_entries(config, qpca::read_config_file(config_path));
        }
        if (*analyze) {
            qpca::apply_entries(config, given(analyze, kAnalyzeFlags, av));
            if (uncentered) {
                config.centered = false;
            }
        } else if (*compare) {
            qpca::apply_entries(config, given(compare, kCompareFlags, cv));
            if (empirical) {
                config.empirical = true;
            }
        } else if (*validate) {
            qpca::apply_entries(config, given(validate, kValidateFlags, vv));
        } else {
            qpca::apply_entries(config, given(bench, kBenchFlags, bv));
        }
    } catch (const qpca::Error &e) {
        std::cerr << "qpca: " << e.what() << '\n';
        return qpca::kExitConfig;
    }

    if (*analyze) {
        return qpca::cmd_analyze(config, std::cout, std::cerr);
    }
    if (*compare) {
        return qpca::cmd_compare(config, std::cout, std::cerr);
    }
    if (*validate) {
        return qpca::cmd_validate(config, std::cout, std::cerr);
    }
    return qpca::cmd_bench(config, std::cout, std::cerr);
}
