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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qpca/baseline.h"
#include "qpca/error.h"
#include "qpca/random.h"
#include "qpca/validation.h"

namespace qpca {

namespace {

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return "";
    }
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

[[noreturn]] void bad_value(const std::string &key, const std::string &value) {
    throw Error(ErrorCode::ParseError, "invalid value '" + value + "' for " + key);
}

double to_double(const std::string &key, const std::string &value) {
    std::string v = trim(value);
    double out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
        bad_value(key, value);
    }
    return out;
}

std::uint64_t to_u64(const std::string &key, const std::string &value) {
    std::string v = trim(value);
    int base = 10;
    if (v.size() > 2 && v[0] == '0' && (v[1] == 'x' || v[1] == 'X')) {
        v = v.substr(2);
        base = 16;
    }
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out, base);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
        bad_value(key, value);
    }
    return out;
}

std::vector<std::string> split(const std::string &value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::vector<double> to_doubles(const std::string &key, const std::string &value) {
    std::vector<double> out;
    for (const auto &item : split(value)) {
        out.push_back(to_double(key, item));
    }
    return out;
}

bool to_bool(const std::string &key, const std::string &value) {
    std::string v = lower(trim(value));
    if (v == "1" || v == "true" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "0" || v == "false" || v == "no" || v == "off") {
        return false;
    }
    bad_value(key, value);
}

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw Error(ErrorCode::InvalidParameters, what);
    }
}

std::string_view mode_name(DmeMode m) {
    return m == DmeMode::Oracle ? "oracle" : "sample-faithful";
}

std::string_view log_mode_name(LogMode m) {
    return m == LogMode::Oracle ? "oracle" : "polynomial";
}

PowerOptions power_options(const RunConfig &c) {
    PowerOptions o;
    o.seed = c.seed;
    o.gap_floor = c.gap_floor;
    o.c_k = c.c_k;
    o.dme_mode = c.mode;
    o.log_mode = c.log_mode;
    o.density.c_dme = c.c_dme;
    return o;
}

void write_output(const RunConfig &config, const std::string &text, std::ostream &out) {
    if (config.output == "-") {
        out << text;
        return;
    }
    std::ofstream f(config.output);
    if (!f) {
        throw Error(ErrorCode::ParseError, "cannot write '" + config.output + "'");
    }
    f << text;
}

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(6) << x;
    return s.str();
}

}  // namespace

void apply_entries(RunConfig &c, const ConfigEntries &entries) {
    for (const auto &[raw_key, value] : entries) {
        std::string key = trim(raw_key);
        std::string v = trim(value);
        if (key == "eps") {
            c.eps = to_double(key, v);
            require(c.eps > 0 && c.eps < 0.5, "eps must lie in (0, 1/2)");
        } else if (key == "R") {
            c.R = static_cast<std::size_t>(to_u64(key, v));
            require(c.R >= 1, "R must be at least 1");
        } else if (key == "route") {
            std::string r = lower(v);
            require(r == "a" || r == "b", "route must be A or B");
            c.route = r == "a" ? Route::A : Route::B;
        } else if (key == "mode") {
            std::string m = lower(v);
            require(m == "oracle" || m == "sample-faithful", "mode must be oracle or sample-faithful");
            c.mode = m == "oracle" ? DmeMode::Oracle : DmeMode::SampleFaithful;
        } else if (key == "log-mode") {
            std::string m = lower(v);
            require(m == "oracle" || m == "polynomial", "log-mode must be oracle or polynomial");
            c.log_mode = m == "oracle" ? LogMode::Oracle : LogMode::Polynomial;
        } else if (key == "seed") {
            c.seed = to_u64(key, v);
        } else if (key == "gap-floor") {
            c.gap_floor = to_double(key, v);
            require(c.gap_floor > 0 && c.gap_floor < 1, "gap-floor must lie in (0, 1)");
        } else if (key == "c-dme") {
            c.c_dme = to_double(key, v);
            require(c.c_dme > 0, "c-dme must be positive");
        } else if (key == "c-k") {
            c.c_k = to_double(key, v);
            require(c.c_k > 0, "c-k must be positive");
        } else if (key == "spectrum") {
            c.spectrum = to_doubles(key, v);
            require(!c.spectrum.empty(), "spectrum is empty");
        } else if (key == "dim") {
            c.dim = static_cast<std::size_t>(to_u64(key, v));
            require(c.dim >= 2 && is_power_of_two(c.dim) && c.dim <= 64, "dim must be a power of two in [2, 64]");
        } else if (key == "data") {
            c.data = v;
        } else if (key == "weights") {
            std::string w = lower(v);
            require(w == "uniform" || w == "column", "weights must be uniform or column");
            c.weights = w == "uniform" ? WeightMode::Uniform : WeightMode::Column;
        } else if (key == "centered") {
            c.centered = to_bool(key, v);
        } else if (key == "output") {
            c.output = v.empty() ? "-" : v;
        } else if (key == "regime") {
            c.regime = lower(v);
            require(c.regime == "uniform" || c.regime == "gap" || c.regime == "both", "regime must be uniform, gap or both");
        } else if (key == "gammas") {
            c.gammas = to_doubles(key, v);
        } else if (key == "r-mins") {
            c.r_mins = to_doubles(key, v);
        } else if (key == "eps-list") {
            c.eps_list = to_doubles(key, v);
        } else if (key == "R-list") {
            std::vector<std::size_t> rs;
            for (const auto &item : split(v)) {
                rs.push_back(static_cast<std::size_t>(to_u64(key, item)));
            }
            c.R_list = rs;
        } else if (key == "gap-eps") {
            c.gap_eps = to_double(key, v);
        } else if (key == "gap-R") {
            c.gap_R = static_cast<std::size_t>(to_u64(key, v));
        } else if (key == "r-max") {
            c.r_max = to_double(key, v);
        } else if (key == "n") {
            c.n = static_cast<std::size_t>(to_u64(key, v));
            require(c.n >= 2, "n must be at least 2");
        } else if (key == "empirical") {
            c.empirical = to_bool(key, v);
        } else if (key == "only") {
            c.only = split(v);
        } else if (key == "bench") {
            c.bench = lower(v);
            require(c.bench == "dme" || c.bench == "ledger" || c.bench == "all", "bench must be dme, ledger or all");
        } else {
            throw Error(ErrorCode::InvalidParameters, "unknown setting '" + key + "'");
        }
    }
}

ConfigEntries read_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open config file '" + path + "'");
    }
    ConfigEntries entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << path << ":" << lineno << ": expected key = value";
            throw Error(ErrorCode::ParseError, msg.str());
        }
        entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return entries;
}

void apply_environment(RunConfig &config) {
    if (const char *s = std::getenv("QPCA_SEED"); s != nullptr && *s != '\0') {
        config.seed = to_u64("QPCA_SEED", s);
    }
}

Json config_json(const RunConfig &c) {
    Json j;
    j["spectrum"] = c.spectrum;
    j["dim"] = c.dim;
    j["data"] = c.data;
    j["weights"] = c.weights == WeightMode::Uniform ? "uniform" : "column";
    j["centered"] = c.centered;
    j["R"] = c.R;
    j["eps"] = c.eps;
    j["route"] = c.route == Route::A ? "A" : "B";
    j["mode"] = mode_name(c.mode);
    j["log_mode"] = log_mode_name(c.log_mode);
    j["gap_floor"] = c.gap_floor;
    j["c_dme"] = c.c_dme;
    j["c_k"] = c.c_k;
    j["seed"] = c.seed;
    return j;
}

AnalyzeResult analyze(const RunConfig &config) {
    require(config.spectrum.empty() != config.data.empty(), "give exactly one of --spectrum or --data");
    PowerOptions options = power_options(config);
    Json report;
    report["version"] = kVersion;
    report["command"] = "analyze";
    report["seed"] = config.seed;
    report["config"] = config_json(config);
    Json warnings = Json::array();

    ComplexMatrix target;
    EncodingBuilder first_stage;
    if (!config.spectrum.empty()) {
        double total = 0;
        for (double r : config.spectrum) {
            require(r >= 0, "spectrum entries must be nonnegative");
            total += r;
        }
        require(total > 0, "spectrum sums to zero");
        if (std::abs(total - 1) > 1e-9) {
            warnings.push_back("spectrum renormalized to unit trace");
        }
        std::vector<double> spectrum;
        for (double r : config.spectrum) {
            spectrum.push_back(r / total);
        }
        std::size_t dim = config.dim != 0 ? config.dim : std::max<std::size_t>(2, next_power_of_two(spectrum.size()));
        require(dim >= spectrum.size(), "dim is smaller than the spectrum");
        Rng rng(mix_seed(config.seed, 0xa11));
        DensityMatrix rho(planted_matrix(spectrum, dim, rng));
        target = rho.matrix();
        RhoSource source{rho, 1};
        first_stage = [source, options](double accuracy) {
            return block_encode_density(source, accuracy, options.dme_mode, options.log_mode, options.density);
        };
        report["input"] = {{"kind", "spectrum"}, {"spectrum", spectrum}, {"dim", dim}};
    } else {
        Dataset ds = load_dataset(config.data, config.weights);
        warnings.push_back("data vectors were normalized to unit norm; this differs from PCA on raw vectors");
        Json raw_norms = ds.raw_norms;
        report["input"] = {
            {"kind", "dataset"},
            {"path", config.data},
            {"points", ds.size()},
            {"original_dim", ds.original_dim},
            {"dim", ds.n},
            {"raw_norms", raw_norms},
        };
        target = covariance_classical(ds, config.centered);
        if (config.centered) {
            CovarianceOptions cov_options;
            cov_options.log_mode = config.log_mode;
            cov_options.density = options.density;
            if (config.route == Route::B) {
                CovarianceBundle bundle = covariance_encoding(ds, Route::B, config.eps, cov_options);
                report["covariance"] = to_json(bundle);
                BlockEncoding enc = bundle.encoding;
                first_stage = [enc](double) { return enc; };
            } else {
                report["covariance"] = to_json(covariance_encoding(ds, Route::A, config.eps, cov_options));
                first_stage = [ds, cov_options](double accuracy) {
                    return covariance_encoding(ds, Route::A, accuracy, cov_options).encoding;
                };
            }
        } else {
            RhoSource source{DensityMatrix(hermitian_part(target)), 1};
            first_stage = [source, options](double accuracy) {
                return block_encode_density(source, accuracy, options.dme_mode, options.log_mode, options.density);
            };
        }
    }
    require(config.R <= static_cast<std::size_t>(target.rows()), "R exceeds the dimension");

    Spectrum oracle = eigh(target);
    Json oracle_json;
    oracle_json["eigenvalues"] = to_json(oracle.eigenvalues);
    Json oracle_vectors = Json::array();
    for (std::size_t i = 0; i < config.R; ++i) {
        oracle_vectors.push_back(to_json(ComplexVector(oracle.vector(i))));
    }
    oracle_json["top_vectors"] = oracle_vectors;
    oracle_json["gap"] = oracle.gap;
    report["oracle"] = oracle_json;

    AnalyzeResult result;
    ComponentList list;
    try {
        list = qpca_components(first_stage, target, config.R, config.eps, options);
        report["status"] = "ok";
    } catch (const GapTooSmallError &e) {
        list = e.partial();
        report["status"] = "gap_too_small";
        report["error"] = e.what();
        result.exit_code = kExitGap;
    }
    Json components = Json::array();
    for (std::size_t i = 0; i < list.components.size(); ++i) {
        const EigenEstimate &est = list.components[i];
        Json c = to_json(est);
        ComplexVector truth = oracle.vector(i);
        double r = oracle.eigenvalues(static_cast<Eigen::Index>(i));
        c["oracle_value"] = r;
        c["value_error"] = std::abs(est.value - r);
        c["overlap_with_oracle"] = std::abs(truth.dot(est.vector));
        c["vector_error"] = phase_distance(est.vector, truth);
        components.push_back(c);
    }
    report["components"] = components;
    report["ledger"] = to_json(list.total_ledger);
    report["warnings"] = warnings;
    result.report = report;
    return result;
}

std::string compare_table(const RunConfig &c) {
    std::vector<std::size_t> rs = c.R_list.value_or(std::vector<std::size_t>{2, 3, 4, 5, 6});
    std::vector<double> epss = c.eps_list.value_or(std::vector<double>{0.2, 0.1, 0.05, 0.02, 0.01});
    std::vector<double> gammas = c.gammas.value_or(std::vector<double>{0.3, 0.4, 0.5, 0.6, 0.7});
    std::vector<double> r_mins = c.r_mins.value_or(std::vector<double>{1e-5, 1e-6, 1e-7, 1e-8, 1e-9});
    bool uniform = c.regime != "gap";
    bool gap = c.regime != "uniform";
    require(!uniform || (!rs.empty() && !epss.empty()), "uniform grid is empty");
    require(!gap || (!gammas.empty() && !r_mins.empty()), "gap grid is empty");

    std::ostringstream out;
    out << "# natural logs, unit constants\n";
    out << "regime,convention,R,eps,gamma,r_max,r_min,n,original_copies,new_copies,original_depth,new_depth,"
           "new_depth_alt,winner,expected,agrees,empirical_original_copies\n";
    auto row = [&](const std::string &regime, CostParams p, const std::string &expected, const std::string &empirical) {
        for (auto conv : {ProbabilityConvention::Born, ProbabilityConvention::Squared}) {
            p.convention = conv;
            CostReport o = cost_model(Method::Original, p);
            CostReport nw = cost_model(Method::New, p);
            std::string winner = o.copies < nw.copies ? "original" : "new";
            out << regime << ',' << convention_name(conv) << ',' << p.R << ',' << fmt(p.eps) << ',' << fmt(p.gamma)
                << ',' << fmt(p.r_max) << ',' << fmt(p.r_min) << ',' << p.n << ',' << fmt(o.copies) << ','
                << fmt(nw.copies) << ',' << fmt(o.depth) << ',' << fmt(nw.depth) << ',' << fmt(nw.depth_alt) << ','
                << winner << ',' << expected << ',' << (winner == expected ? "yes" : "no") << ',' << empirical
                << '\n';
        }
    };
    if (uniform) {
        for (std::size_t R : rs) {
            require(R >= 1 && R <= c.n, "R-list entries must lie in [1, n]");
            for (double eps : epss) {
                require(eps > 0 && eps < 1, "eps-list entries must lie in (0, 1)");
                CostParams p;
                p.R = R;
                p.eps = eps;
                p.n = c.n;
                p.r_max = p.r_min = 1.0 / static_cast<double>(R);
                // A flat spectrum has no gap; the best the power method can see is the resolution.
                p.gamma = eps;
                std::string empirical = "NA";
                if (c.empirical && eps >= 0.05) {
                    ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(c.n), static_cast<Eigen::Index>(c.n));
                    for (std::size_t i = 0; i < R; ++i) {
                        rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p.r_max;
                    }
                    SampleResult s = sample_components(DensityMatrix(rho), eps, R, mix_seed(c.seed, R * 1000 + static_cast<std::size_t>(1 / eps)));
                    empirical = fmt(s.empirical.copies);
                }
                row("uniform", p, "original", empirical);
            }
        }
    }
    if (gap) {
        require(c.gap_eps > 0 && c.gap_eps < 1 && c.gap_R >= 1, "gap-eps must lie in (0, 1) and gap-R >= 1");
        for (double g : gammas) {
            require(g > 0 && g <= 1, "gammas must lie in (0, 1]");
            for (double r_min : r_mins) {
                require(r_min > 0 && r_min <= c.r_max, "r-mins must lie in (0, r-max]");
                CostParams p;
                p.R = c.gap_R;
                p.eps = c.gap_eps;
                p.n = c.n;
                p.gamma = g;
                p.r_max = c.r_max;
                p.r_min = r_min;
                std::string empirical = "NA";
                double expected_draws = 1 / (r_min * p.eps * p.eps);
                if (c.empirical && p.R == 2 && expected_draws <= 1e7) {
                    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
                    rho(0, 0) = 1 - r_min;
                    rho(1, 1) = r_min;
                    SampleResult s = sample_components(DensityMatrix(rho), p.eps, 2, mix_seed(c.seed, 77));
                    empirical = fmt(s.empirical.copies);
                }
                row("gap", p, "new", empirical);
            }
        }
    }
    return out.str();
}

std::string bench_table(const RunConfig &c) {
    std::ostringstream out;
    if (c.bench == "dme" || c.bench == "all") {
        Rng rng(mix_seed(c.seed, 0xd3e));
        DensityMatrix rho(random_density(4, rng));
        std::vector<std::size_t> steps{8, 16, 32, 64, 128, 256, 512};
        auto points = dme_convergence(rho, 0.5, steps);
        std::vector<double> lx;
        std::vector<double> ly;
        out << "bench,steps,empirical_error\n";
        for (const auto &pt : points) {
            out << "dme," << pt.steps << ',' << fmt(pt.error) << '\n';
            lx.push_back(std::log(static_cast<double>(pt.steps)));
            ly.push_back(std::log(pt.error));
        }
        out << "# dme log-log slope " << fmt(fit_slope(lx, ly)) << '\n';
    }
    if (c.bench == "ledger" || c.bench == "all") {
        out << "bench,eps,gamma,k,rho_copies,circuit_depth\n";
        std::vector<double> epss{1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
        auto by_eps = copies_vs_eps(4, 0.25, epss, c.seed);
        std::vector<double> lx;
        std::vector<double> ly;
        for (const auto &pt : by_eps) {
            out << "eps," << fmt(pt.eps) << ',' << fmt(pt.gamma) << ',' << pt.k << ',' << fmt(pt.rho_copies) << ','
                << fmt(pt.circuit_depth) << '\n';
            lx.push_back(std::log(1 / pt.eps));
            ly.push_back(std::log(pt.rho_copies));
        }
        out << "# copies vs 1/eps slope " << fmt(fit_slope(lx, ly)) << '\n';
        std::vector<double> gammas = ledger_gamma_grid();
        auto by_gamma = copies_vs_gamma(4, 1e-3, gammas, c.seed);
        lx.clear();
        ly.clear();
        for (const auto &pt : by_gamma) {
            out << "gamma," << fmt(pt.eps) << ',' << fmt(pt.gamma) << ',' << pt.k << ',' << fmt(pt.rho_copies) << ','
                << fmt(pt.circuit_depth) << '\n';
            lx.push_back(std::log(1 / pt.gamma));
            ly.push_back(std::log(pt.rho_copies));
        }
        out << "# copies vs 1/gamma slope " << fmt(fit_slope(lx, ly)) << '\n';
    }
    return out.str();
}

int cmd_analyze(const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        AnalyzeResult result = analyze(config);
        for (const auto &w : result.report["warnings"]) {
            err << "warning: " << w.get<std::string>() << '\n';
        }
        write_output(config, result.report.dump(2) + "\n", out);
        if (result.exit_code == kExitGap) {
            err << "error: " << result.report["error"].get<std::string>() << '\n';
        }
        return result.exit_code;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

int cmd_compare(const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        write_output(config, compare_table(config), out);
        return kExitOk;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

int cmd_validate(const RunConfig &config, std::ostream &out, std::ostream &err) {
    std::vector<CriterionResult> results;
    try {
        results = run_criteria(config.only, config.seed, &out);
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    std::size_t failed = 0;
    for (const auto &r : results) {
        failed += r.passed ? 0 : 1;
    }
    out << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? kExitOk : kExitFailure;
}

int cmd_bench(const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        write_output(config, bench_table(config), out);
        return kExitOk;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace qpca
