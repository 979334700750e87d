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


#include "qpca/commands.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qpca/validation.h"
#include "test_util.h"

namespace qpca {
namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string &name, const std::string &content) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream f(p);
    f << content;
    return p;
}

RunConfig spectrum_config() {
    RunConfig c;
    apply_entries(c, {{"spectrum", "0.5,0.3,0.15,0.05"}, {"R", "2"}, {"eps", "0.01"}});
    return c;
}

TEST(Config, EntriesParse) {
    RunConfig c;
    apply_entries(c, {{"eps", "0.02"},
                      {"R", "3"},
                      {"route", "A"},
                      {"mode", "sample-faithful"},
                      {"log-mode", "polynomial"},
                      {"seed", "0x10"},
                      {"centered", "false"},
                      {"R-list", "2,3"}});
    EXPECT_EQ(c.eps, 0.02);
    EXPECT_EQ(c.R, 3u);
    EXPECT_EQ(c.route, Route::A);
    EXPECT_EQ(c.mode, DmeMode::SampleFaithful);
    EXPECT_EQ(c.log_mode, LogMode::Polynomial);
    EXPECT_EQ(c.seed, 16u);
    EXPECT_FALSE(c.centered);
    ASSERT_TRUE(c.R_list.has_value());
    EXPECT_EQ(c.R_list->size(), 2u);
}

TEST(Config, Rejections) {
    RunConfig c;
    EXPECT_QPCA_ERROR(apply_entries(c, {{"eps", "0.7"}}), ErrorCode::InvalidParameters);
    EXPECT_QPCA_ERROR(apply_entries(c, {{"eps", "abc"}}), ErrorCode::ParseError);
    EXPECT_QPCA_ERROR(apply_entries(c, {{"route", "C"}}), ErrorCode::InvalidParameters);
    EXPECT_QPCA_ERROR(apply_entries(c, {{"frobnicate", "1"}}), ErrorCode::InvalidParameters);
    EXPECT_QPCA_ERROR(apply_entries(c, {{"dim", "6"}}), ErrorCode::InvalidParameters);
}

TEST(Config, Precedence) {
    // defaults < environment < config file < flags
    fs::path file = temp_file("qpca_precedence.conf", "# settings\nseed = 22\neps = 0.05\n");
    ::setenv("QPCA_SEED", "11", 1);
    RunConfig c;
    EXPECT_EQ(c.seed, kDefaultSeed);
    apply_environment(c);
    EXPECT_EQ(c.seed, 11u);
    apply_entries(c, read_config_file(file.string()));
    EXPECT_EQ(c.seed, 22u);
    EXPECT_EQ(c.eps, 0.05);
    apply_entries(c, {{"seed", "33"}});
    EXPECT_EQ(c.seed, 33u);
    EXPECT_EQ(c.eps, 0.05);
    ::unsetenv("QPCA_SEED");
    fs::remove(file);
}

TEST(Config, FileErrors) {
    EXPECT_QPCA_ERROR(read_config_file("/nonexistent/qpca.conf"), ErrorCode::ParseError);
    fs::path bad = temp_file("qpca_bad.conf", "eps 0.1\n");
    EXPECT_QPCA_ERROR(read_config_file(bad.string()), ErrorCode::ParseError);
    fs::remove(bad);
}

TEST(Analyze, SpectrumReport) {
    AnalyzeResult r = analyze(spectrum_config());
    EXPECT_EQ(r.exit_code, kExitOk);
    const Json &j = r.report;
    EXPECT_EQ(j["status"], "ok");
    EXPECT_EQ(j["version"], kVersion);
    EXPECT_EQ(j["seed"], kDefaultSeed);
    EXPECT_EQ(j["config"]["R"], 2);
    ASSERT_EQ(j["components"].size(), 2u);
    EXPECT_NEAR(j["components"][0]["value"].get<double>(), 0.5, 0.01);
    EXPECT_NEAR(j["components"][1]["value"].get<double>(), 0.3, 0.01);
    for (const auto &c : j["components"]) {
        EXPECT_TRUE(c.contains("vector"));
        EXPECT_TRUE(c.contains("residual"));
        EXPECT_GE(c["overlap_with_oracle"].get<double>(), 0.99);
    }
    EXPECT_TRUE(j.contains("oracle"));
    EXPECT_TRUE(j.contains("ledger"));
}

TEST(Analyze, ByteIdenticalRuns) {
    RunConfig c = spectrum_config();
    std::ostringstream a, b, err;
    EXPECT_EQ(cmd_analyze(c, a, err), kExitOk);
    EXPECT_EQ(cmd_analyze(c, b, err), kExitOk);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().find("time"), std::string::npos);
}

TEST(Analyze, DatasetMatchesClassicalPca) {
    fs::path data = temp_file("qpca_iris_like.csv",
                              "5.1,3.5,1.4,0.2\n4.9,3.0,1.4,0.2\n4.7,3.2,1.3,0.2\n"
                              "7.0,3.2,4.7,1.4\n6.4,3.2,4.5,1.5\n6.9,3.1,4.9,1.5\n"
                              "6.3,3.3,6.0,2.5\n5.8,2.7,5.1,1.9\n7.1,3.0,5.9,2.1\n");
    RunConfig c;
    apply_entries(c, {{"data", data.string()}, {"route", "B"}, {"R", "1"}});
    AnalyzeResult r = analyze(c);
    fs::remove(data);
    EXPECT_EQ(r.exit_code, kExitOk);
    EXPECT_GE(r.report["components"][0]["overlap_with_oracle"].get<double>(), 0.99);
    EXPECT_TRUE(r.report.contains("covariance"));
}

TEST(Analyze, MissingFileExitsTwoWithoutReport) {
    fs::path out = fs::temp_directory_path() / "qpca_missing_report.json";
    fs::remove(out);
    RunConfig c;
    apply_entries(c, {{"data", "/nonexistent/data.csv"}, {"output", out.string()}});
    std::ostringstream o, err;
    EXPECT_EQ(cmd_analyze(c, o, err), kExitConfig);
    EXPECT_FALSE(fs::exists(out));
    EXPECT_NE(err.str().find("error"), std::string::npos);
}

TEST(Analyze, GapFailureExitsThreeWithPartialReport) {
    RunConfig c;
    apply_entries(c, {{"spectrum", "0.5,0.2,0.2,0.1"}, {"R", "3"}, {"eps", "0.01"}});
    std::ostringstream o, err;
    EXPECT_EQ(cmd_analyze(c, o, err), kExitGap);
    Json j = Json::parse(o.str());
    EXPECT_EQ(j["status"], "gap_too_small");
    EXPECT_GE(j["components"].size(), 1u);
}

TEST(Analyze, NeedsExactlyOneInput) {
    RunConfig c;
    std::ostringstream o, err;
    EXPECT_EQ(cmd_analyze(c, o, err), kExitConfig);
}

TEST(Compare, FlagsExpectedWinners) {
    RunConfig c;
    apply_entries(c, {{"regime", "uniform"}, {"R-list", "4"}, {"eps-list", "0.05"}});
    std::string table = compare_table(c);
    EXPECT_NE(table.find("uniform,born,4,0.05"), std::string::npos);
    EXPECT_EQ(table.find(",no,"), std::string::npos);
    EXPECT_NE(table.find("# natural logs"), std::string::npos);
}

TEST(Compare, BoundaryPointDependsOnConvention) {
    // gamma 0.3, r_min 1e-4: the squared-amplitude convention favors the new
    // method, the Born convention still favors the original one.
    RunConfig c;
    apply_entries(c, {{"regime", "gap"}, {"gammas", "0.3"}, {"r-mins", "1e-4"}});
    std::istringstream table(compare_table(c));
    std::string line;
    int rows = 0;
    while (std::getline(table, line)) {
        if (line.rfind("gap,squared", 0) == 0) {
            EXPECT_NE(line.find(",new,new,yes,"), std::string::npos) << line;
            ++rows;
        } else if (line.rfind("gap,born", 0) == 0) {
            EXPECT_NE(line.find(",original,new,no,"), std::string::npos) << line;
            ++rows;
        }
    }
    EXPECT_EQ(rows, 2);
}

TEST(Compare, EmptyGridExitsTwo) {
    RunConfig c;
    apply_entries(c, {{"regime", "gap"}, {"gammas", ""}});
    std::ostringstream o, err;
    EXPECT_EQ(cmd_compare(c, o, err), kExitConfig);
}

TEST(Compare, EmpiricalColumn) {
    RunConfig c;
    apply_entries(c, {{"regime", "gap"}, {"gammas", "0.5"}, {"r-mins", "1e-5"}, {"empirical", "true"}});
    std::string table = compare_table(c);
    EXPECT_EQ(table.find(",NA\n"), std::string::npos) << table;
}

TEST(Validate, OnlyFilter) {
    RunConfig c;
    apply_entries(c, {{"only", "dme"}});
    std::ostringstream o, err;
    EXPECT_EQ(cmd_validate(c, o, err), kExitOk);
    EXPECT_NE(o.str().find("[1]"), std::string::npos);
    EXPECT_EQ(o.str().find("[2]"), std::string::npos);
    EXPECT_NE(o.str().find("1/1 criteria passed"), std::string::npos);
}

TEST(Validate, UnknownFilterExitsTwo) {
    RunConfig c;
    apply_entries(c, {{"only", "nosuchthing"}});
    std::ostringstream o, err;
    EXPECT_EQ(cmd_validate(c, o, err), kExitConfig);
}

TEST(Validate, SeedOverrideIsDeterministic) {
    auto outcome = [](std::uint64_t seed) {
        std::vector<bool> passed;
        for (const auto &r : run_criteria({"2", "9", "10"}, seed, nullptr)) {
            passed.push_back(r.passed);
        }
        return passed;
    };
    EXPECT_EQ(outcome(99), outcome(99));
}

TEST(Bench, DmeSweep) {
    RunConfig c;
    std::ostringstream o, err;
    EXPECT_EQ(cmd_bench(c, o, err), kExitOk);
    EXPECT_NE(o.str().find("slope"), std::string::npos);
}

}  // namespace
}  // namespace qpca
