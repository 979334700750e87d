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

#include "qpca/validation.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "qpca/baseline.h"
#include "qpca/blockenc.h"
#include "qpca/commands.h"
#include "qpca/dme.h"
#include "qpca/error.h"
#include "qpca/power.h"
#include "qpca/qsvt.h"
#include "qpca/random.h"
#include "qpca/report.h"

namespace qpca {

namespace {

using Index = Eigen::Index;

std::string num(double x) {
    std::ostringstream s;
    s << std::setprecision(3) << x;
    return s.str();
}

ComplexMatrix random_contraction(std::size_t dim, double norm, Rng &rng) {
    std::normal_distribution<double> g;
    auto d = static_cast<Index>(dim);
    ComplexMatrix c(d, d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            c(i, j) = Complex(g(rng), g(rng));
        }
    }
    return norm * c / spectral_norm(c);
}

// An input encoding together with the operator it claims to encode.
struct Claimed {
    BlockEncoding be;
    ComplexMatrix target;
};

Claimed random_input(std::size_t dim, bool exact, Rng &rng) {
    std::uniform_real_distribution<double> u(0, 1);
    if (exact && u(rng) < 0.5) {
        ComplexMatrix w = haar_unitary(dim, rng);
        return {encode_self(w), w};
    }
    double alpha = 1 + 2 * u(rng);
    ComplexMatrix a = alpha * random_contraction(dim, 0.8, rng);
    if (exact) {
        return {encode_block(a / alpha, alpha, 0), a};
    }
    double eps = 1e-3 + 1e-2 * u(rng);
    ComplexMatrix e = random_contraction(dim, eps / alpha, rng);
    return {encode_block(a / alpha + e, alpha, eps), a};
}

CriterionOutcome check_case(const BlockEncoding &out, const ComplexMatrix &target, bool exact, const std::string &what) {
    double err = block_error(out, target);
    double unitarity = unitarity_defect(out.unitary());
    double bound = exact ? 1e-10 : out.eps() + 1e-9;
    if (err > bound || unitarity > 1e-9 || (exact && out.eps() != 0)) {
        return {false, what + ": error " + num(err) + " vs bound " + num(bound) + ", unitarity " + num(unitarity)};
    }
    return {true, ""};
}

CriterionOutcome criterion_dme(std::uint64_t seed) {
    Rng rng(mix_seed(seed, 1));
    DensityMatrix rho(random_density(4, rng));
    std::vector<std::size_t> steps{8, 16, 32, 64, 128, 256, 512};
    std::vector<double> lx;
    std::vector<double> ly;
    for (const auto &pt : dme_convergence(rho, 0.5, steps)) {
        lx.push_back(std::log(static_cast<double>(pt.steps)));
        ly.push_back(std::log(pt.error));
    }
    double slope = fit_slope(lx, ly);
    return {slope >= -1.25 && slope <= -0.75, "slope " + num(slope) + " (want [-1.25, -0.75])"};
}

CriterionOutcome criterion_blockenc(std::uint64_t seed) {
    Rng rng(mix_seed(seed, 2));
    std::uniform_real_distribution<double> u(0, 1);
    double worst_exact = 0;
    for (int c = 0; c < 200; ++c) {
        bool exact = c % 2 == 0;
        std::size_t dim = std::size_t{2} << (c / 2 % 3);  // 2, 4, 8
        CriterionOutcome r;
        std::optional<BlockEncoding> out;
        ComplexMatrix target;
        switch (c / 2 % 5) {
            case 0: {
                Claimed a = random_input(dim, exact, rng);
                Claimed b = random_input(dim, exact, rng);
                out = product(a.be, b.be);
                target = a.target * b.target;
                r = check_case(*out, target, exact, "product");
                break;
            }
            case 1: {
                std::size_t m = 1 + static_cast<std::size_t>(u(rng) * 4);
                std::vector<double> w;
                std::vector<BlockEncoding> bes;
                std::vector<int> signs;
                target = ComplexMatrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
                for (std::size_t i = 0; i < m; ++i) {
                    Claimed x = random_input(dim, exact, rng);
                    w.push_back(0.1 + 2 * u(rng));
                    signs.push_back(u(rng) < 0.5 ? 1 : -1);
                    target += signs.back() * w.back() * x.target;
                    bes.push_back(x.be);
                }
                out = lcu(w, bes, signs);
                r = check_case(*out, target, exact, "lcu");
                break;
            }
            case 2: {
                std::size_t k = dim == 8 ? 2 : 3;
                std::vector<BlockEncoding> bes;
                target = ComplexMatrix::Identity(1, 1);
                for (std::size_t i = 0; i < k; ++i) {
                    Claimed x = random_input(i == 0 ? dim : 2, exact, rng);
                    target = kron(target, x.target);
                    bes.push_back(x.be);
                }
                out = tensor(bes);
                r = check_case(*out, target, exact, "tensor");
                break;
            }
            case 3: {
                Claimed x = random_input(dim, exact, rng);
                double p = 1 + 4 * u(rng) + 1e-3;
                out = scale_down(x.be, p);
                target = x.target / p;
                r = check_case(*out, target, exact, "scale_down");
                break;
            }
            default: {
                std::size_t da = std::size_t{1} << static_cast<std::size_t>(u(rng) * 3);
                ComplexMatrix prep = haar_unitary(da * dim, rng);
                out = purify_density(prep, da, dim);
                ComplexVector phi = prep.col(0);
                target = partial_trace_first(phi * phi.adjoint(), da, dim);
                // Purification is exact regardless of the case parity.
                r = check_case(*out, target, true, "purify_density");
                exact = true;
                break;
            }
        }
        if (!r.passed) {
            return {false, "case " + std::to_string(c) + " " + r.detail};
        }
        if (exact) {
            worst_exact = std::max(worst_exact, block_error(*out, target));
        }
    }
    return {true, "200 cases; worst exact error " + num(worst_exact)};
}

CriterionOutcome criterion_log(std::uint64_t seed) {
    Rng rng(mix_seed(seed, 3));
    double worst = 0;
    const std::vector<double> epss{1e-2, 1e-3, 1e-4};
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t dim = std::size_t{2} << (trial % 4);  // 2..16
        DensityMatrix rho(random_density(dim, rng));
        ComplexMatrix target = (M_PI / 4) * rho.matrix();
        for (double eps : epss) {
            for (LogMode mode : {LogMode::Oracle, LogMode::Polynomial}) {
                BlockEncoding be = block_encode_density({rho, 1}, eps, DmeMode::Oracle, mode);
                double err = block_error(be, target);
                worst = std::max(worst, err / eps);
                if (err > eps) {
                    return {false, "trial " + std::to_string(trial) + " eps " + num(eps) + ": error " + num(err)};
                }
            }
        }
    }
    // Degree growth against log(1/eps): the fitted slope over the tighter
    // half of the range may not outgrow the looser half.
    std::vector<double> lx;
    std::vector<double> ly;
    std::string degrees;
    for (int k = 2; k <= 12; ++k) {
        double e = std::pow(10.0, -k);
        auto d = static_cast<double>(arcsin_poly(e).degree());
        lx.push_back(std::log(1 / e));
        ly.push_back(d);
        degrees += (degrees.empty() ? "" : ",") + num(d);
    }
    double loose = fit_slope({lx.begin(), lx.begin() + 6}, {ly.begin(), ly.begin() + 6});
    double tight = fit_slope({lx.begin() + 5, lx.end()}, {ly.begin() + 5, ly.end()});
    if (tight > 1.5 * loose) {
        return {false, "degree slope " + num(tight) + " vs " + num(loose) + " per unit log(1/eps); degrees " + degrees};
    }
    return {true, "worst error/eps " + num(worst) + "; degrees " + degrees};
}

CriterionOutcome criterion_top(std::uint64_t seed) {
    double worst_value = 0;
    double worst_vector = 0;
    int runs = 0;
    for (double gamma : {0.1, 0.2, 0.4}) {
        for (std::size_t dim : {4, 8, 16}) {
            for (int s = 0; s < 20; ++s) {
                Rng rng(mix_seed(seed, 4000 + static_cast<std::uint64_t>(runs)));
                DensityMatrix rho(planted_matrix(gap_spectrum(dim, 0.55, gamma), dim, rng));
                Spectrum truth = eigh(rho.matrix());
                PowerOptions options;
                options.seed = mix_seed(seed, 9000 + static_cast<std::uint64_t>(runs));
                EigenEstimate est = qpca_top({rho, 1}, 1e-2, options);
                double ve = std::abs(est.value - truth.eigenvalues(0));
                double xe = phase_distance(est.vector, truth.vector(0));
                worst_value = std::max(worst_value, ve);
                worst_vector = std::max(worst_vector, xe);
                ++runs;
                if (ve > 1e-2 || xe > 1e-2) {
                    return {false, "gamma " + num(gamma) + " dim " + std::to_string(dim) + " seed " +
                                       std::to_string(s) + ": value error " + num(ve) + ", vector error " + num(xe)};
                }
            }
        }
    }
    return {true, std::to_string(runs) + " runs; worst value error " + num(worst_value) + ", vector error " +
                      num(worst_vector)};
}

CriterionOutcome criterion_deflation(std::uint64_t seed) {
    Rng rng(mix_seed(seed, 5));
    DensityMatrix rho(planted_matrix({0.5, 0.3, 0.15, 0.05}, 4, rng));
    Spectrum truth = eigh(rho.matrix());
    PowerOptions options;
    options.seed = mix_seed(seed, 55);
    const double eps = 1e-2;
    ComponentList list = qpca_components({rho, 1}, 3, eps, options);
    std::string detail;
    bool ok = true;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto &c = list.components[i];
        double ve = std::abs(c.value - truth.eigenvalues(static_cast<Index>(i)));
        double xe = phase_distance(c.vector, truth.vector(i));
        detail += "r" + std::to_string(i + 1) + " err " + num(ve) + "/" + num(xe) + "; ";
        ok = ok && ve <= eps && xe <= eps;
        for (std::size_t j = 0; j < i; ++j) {
            double overlap = std::abs(list.components[j].vector.dot(c.vector));
            ok = ok && overlap <= 2 * eps;
        }
    }
    return {ok, detail + "copies " + num(list.total_ledger.rho_copies)};
}

CriterionOutcome criterion_ledger(std::uint64_t seed) {
    std::vector<double> epss{1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
    std::vector<double> lx;
    std::vector<double> ly;
    for (const auto &pt : copies_vs_eps(4, 0.25, epss, seed)) {
        lx.push_back(std::log(1 / pt.eps));
        ly.push_back(std::log(pt.rho_copies));
    }
    double s_eps = fit_slope(lx, ly);
    std::vector<double> gammas = ledger_gamma_grid();
    lx.clear();
    ly.clear();
    for (const auto &pt : copies_vs_gamma(4, 1e-3, gammas, seed)) {
        lx.push_back(std::log(1 / pt.gamma));
        ly.push_back(std::log(pt.rho_copies));
    }
    double s_gamma = fit_slope(lx, ly);
    bool ok = std::abs(s_eps - 2) <= 0.3 && std::abs(s_gamma - 2) <= 0.4;
    return {ok, "slope vs 1/eps " + num(s_eps) + " (2 +- 0.3), vs 1/gamma " + num(s_gamma) + " (2 +- 0.4)"};
}

CriterionOutcome criterion_covariance(std::uint64_t seed) {
    Rng rng(mix_seed(seed, 7));
    std::uniform_int_distribution<std::size_t> dim_dist(2, 16);
    std::uniform_int_distribution<std::size_t> count_dist(1, 12);
    double worst = 0;
    for (int t = 0; t < 50; ++t) {
        std::size_t dim = dim_dist(rng);
        std::size_t count = count_dist(rng);
        std::vector<ComplexVector> raw;
        for (std::size_t i = 0; i < count; ++i) {
            raw.push_back(random_state(dim, rng) * (0.5 + static_cast<double>(i)));
        }
        Dataset ds = make_dataset(raw);
        CovarianceBundle b = covariance_encoding(ds, Route::B);
        double err = spectral_norm(extract_block(b.encoding) - (M_PI / 8) * covariance_classical(ds, true));
        worst = std::max(worst, err);
        if (err > 1e-9) {
            return {false, "dataset " + std::to_string(t) + ": route B error " + num(err)};
        }
    }
    // Route A against route B; the constant is 1.
    std::string detail = "route B worst " + num(worst) + "; route A/B distance";
    for (int t = 0; t < 3; ++t) {
        std::size_t dim = std::size_t{2} << t;
        std::vector<ComplexVector> raw;
        for (std::size_t i = 0; i < 5; ++i) {
            raw.push_back(random_state(dim, rng));
        }
        Dataset ds = make_dataset(raw);
        ComplexMatrix b = extract_block(covariance_encoding(ds, Route::B).encoding);
        for (double eps : {1e-1, 1e-2, 1e-3}) {
            ComplexMatrix a = extract_block(covariance_encoding(ds, Route::A, eps).encoding);
            double d = spectral_norm(a - b);
            detail += " " + num(d);
            if (d > eps) {
                return {false, detail + " exceeds eps " + num(eps)};
            }
        }
    }
    return {true, detail};
}

CriterionOutcome criterion_pca(std::uint64_t seed) {
    auto raw = cluster_points(8, 12, 3, mix_seed(seed, 8));
    auto path = std::filesystem::temp_directory_path() /
                ("qpca_clusters_" + std::to_string(mix_seed(seed, 88) % 1000000007) + ".csv");
    {
        std::ofstream f(path);
        f << std::setprecision(17);
        for (const auto &x : raw) {
            for (Index i = 0; i < x.size(); ++i) {
                f << (i ? "," : "") << x(i).real();
            }
            f << '\n';
        }
    }
    RunConfig config;
    config.data = path.string();
    config.R = 2;
    config.eps = 1e-2;
    config.route = Route::B;
    config.seed = seed;
    AnalyzeResult result = analyze(config);
    std::filesystem::remove(path);
    // Independent oracle on the normalized data.
    Dataset ds = make_dataset(raw);
    Spectrum truth = eigh(covariance_classical(ds, true));
    const Json &comps = result.report["components"];
    if (comps.size() != 2) {
        return {false, "analyze returned " + std::to_string(comps.size()) + " components"};
    }
    std::string detail;
    bool ok = true;
    for (std::size_t i = 0; i < 2; ++i) {
        ComplexMatrix v = matrix_from_json(Json::array({comps[i]["vector"]}));
        double overlap = std::abs(truth.vector(i).dot(v.row(0).transpose()));
        detail += "overlap " + num(overlap) + " ";
        ok = ok && overlap >= 0.99;
    }
    return {ok, detail + "(status " + result.report["status"].get<std::string>() + ")"};
}

CriterionOutcome criterion_sampler(std::uint64_t seed) {
    const std::size_t draws = 100000;
    for (int t = 0; t < 3; ++t) {
        Rng rng(mix_seed(seed, 900 + static_cast<std::uint64_t>(t)));
        DensityMatrix rho(random_density(8, rng));
        SpectralSamplingModel model = pe_distribution(rho, 12);
        std::vector<std::size_t> counts(model.outcomes.size(), 0);
        for (std::size_t o : draw_outcomes(model, draws, mix_seed(seed, 950 + static_cast<std::uint64_t>(t)))) {
            ++counts[o];
        }
        for (std::size_t i = 0; i < counts.size(); ++i) {
            double r = model.outcomes[i].probability;
            double freq = static_cast<double>(counts[i]) / static_cast<double>(draws);
            double sigma = std::sqrt(r / static_cast<double>(draws));
            if (std::abs(freq - r) > 3 * sigma) {
                return {false, "spectrum " + std::to_string(t) + " outcome " + std::to_string(i) + ": freq " +
                                   num(freq) + " vs r " + num(r)};
            }
        }
    }
    return {true, "3 spectra x 8 outcomes within 3 sigma"};
}

CriterionOutcome criterion_regime(std::uint64_t seed) {
    RunConfig config;
    config.seed = seed;
    std::istringstream table(compare_table(config));
    std::string line;
    std::size_t rows = 0;
    std::size_t agree = 0;
    std::string first_miss;
    while (std::getline(table, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("regime", 0) == 0) {
            continue;
        }
        ++rows;
        bool ok = line.find(",yes,") != std::string::npos;
        agree += ok ? 1 : 0;
        if (!ok && first_miss.empty()) {
            first_miss = line;
        }
    }
    // Two regimes x 25 points x 2 conventions.
    bool ok = rows == 100 && agree == rows;
    return {ok, std::to_string(agree) + "/" + std::to_string(rows) + " grid rows agree" +
                    (first_miss.empty() ? "" : "; first miss: " + first_miss)};
}

}  // namespace

double fit_slope(const std::vector<double> &x, const std::vector<double> &y) {
    double n = static_cast<double>(x.size());
    double mx = 0;
    double my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i] / n;
        my += y[i] / n;
    }
    double sxy = 0;
    double sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

std::vector<double> gap_spectrum(std::size_t dim, double r1, double gamma) {
    double r2 = r1 - gamma;
    double rest = 1 - r1 - r2;
    if (dim < 2 || r2 < 0 || rest < -1e-12 || (dim == 2 && rest > 1e-12)) {
        throw Error(ErrorCode::InvalidParameters, "spectrum does not fit the dimension");
    }
    std::vector<double> s{r1, r2};
    for (std::size_t i = 2; i < dim; ++i) {
        s.push_back(std::max(0.0, rest) / static_cast<double>(dim - 2));
    }
    if (dim > 2 && s[2] > r2 + 1e-12) {
        throw Error(ErrorCode::InvalidParameters, "trailing eigenvalues exceed r1 - gamma");
    }
    return s;
}

std::vector<DmePoint> dme_convergence(const DensityMatrix &rho, double t, const std::vector<std::size_t> &steps) {
    std::vector<DmePoint> out;
    for (std::size_t n : steps) {
        out.push_back({n, exponentiate_density_steps(rho, t, n).empirical_error});
    }
    return out;
}

namespace {

LedgerPoint ledger_point(std::size_t dim, double gamma, double eps, std::uint64_t seed) {
    Rng rng(mix_seed(seed, 600));
    DensityMatrix rho(planted_matrix(gap_spectrum(dim, 0.5, gamma), dim, rng));
    PowerOptions options;
    options.seed = mix_seed(seed, 601);
    EigenEstimate est = qpca_top({rho, 1}, eps, options);
    return {eps, gamma, est.ledger.rho_copies, est.ledger.circuit_depth, est.k};
}

}  // namespace

std::vector<double> ledger_gamma_grid() {
    std::vector<double> out;
    for (int j = 0; j <= 10; ++j) {
        out.push_back(0.005 * std::pow(2.0, j / 2.0));
    }
    return out;
}

std::vector<LedgerPoint> copies_vs_eps(
    std::size_t dim, double gamma, const std::vector<double> &eps, std::uint64_t seed) {
    std::vector<LedgerPoint> out;
    for (double e : eps) {
        out.push_back(ledger_point(dim, gamma, e, seed));
    }
    return out;
}

std::vector<LedgerPoint> copies_vs_gamma(
    std::size_t dim, double eps, const std::vector<double> &gammas, std::uint64_t seed) {
    std::vector<LedgerPoint> out;
    for (double g : gammas) {
        out.push_back(ledger_point(dim, g, eps, seed));
    }
    return out;
}

std::vector<ComplexVector> cluster_points(std::size_t dim, std::size_t count, std::size_t clusters, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> g;
    auto d = static_cast<Index>(dim);
    std::vector<ComplexVector> centers;
    for (std::size_t c = 0; c < clusters; ++c) {
        ComplexVector x(d);
        for (Index i = 0; i < d; ++i) {
            x(i) = 3 * g(rng);
        }
        centers.push_back(x);
    }
    std::vector<ComplexVector> out;
    for (std::size_t i = 0; i < count; ++i) {
        ComplexVector x = centers[i % clusters];
        for (Index j = 0; j < d; ++j) {
            x(j) += 0.3 * g(rng);
        }
        out.push_back(x);
    }
    return out;
}

const std::vector<Criterion> &acceptance_criteria() {
    static const std::vector<Criterion> all{
        {1, "DME convergence law", {"dme"}, 10, criterion_dme},
        {2, "block-encoding algebra", {"blockenc"}, 30, criterion_blockenc},
        {3, "log-unitary recovery", {"qsvt"}, 60, criterion_log},
        {4, "top eigenpair", {"top", "power"}, 60, criterion_top},
        {5, "R components via deflation", {"deflation", "power"}, 60, criterion_deflation},
        {6, "ledger scaling", {"ledger", "power"}, 120, criterion_ledger},
        {7, "covariance routes", {"covariance"}, 60, criterion_covariance},
        {8, "end-to-end PCA with centering", {"pca", "covariance", "cli"}, 60, criterion_pca},
        {9, "baseline sampler fidelity", {"baseline"}, 10, criterion_sampler},
        {10, "regime crossover", {"regime", "baseline"}, 5, criterion_regime},
    };
    return all;
}

std::vector<CriterionResult> run_criteria(const std::vector<std::string> &only, std::uint64_t seed, std::ostream *progress) {
    const auto &all = acceptance_criteria();
    auto selected = [&](const Criterion &c) {
        if (only.empty()) {
            return true;
        }
        for (const auto &f : only) {
            if (f == std::to_string(c.id) || std::find(c.tags.begin(), c.tags.end(), f) != c.tags.end()) {
                return true;
            }
        }
        return false;
    };
    for (const auto &f : only) {
        bool known = std::any_of(all.begin(), all.end(), [&](const Criterion &c) {
            return f == std::to_string(c.id) || std::find(c.tags.begin(), c.tags.end(), f) != c.tags.end();
        });
        if (!known) {
            throw Error(ErrorCode::InvalidParameters, "unknown criterion filter '" + f + "'");
        }
    }
    std::vector<CriterionResult> results;
    for (const auto &c : all) {
        if (!selected(c)) {
            continue;
        }
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        r.budget_seconds = c.budget_seconds;
        auto start = std::chrono::steady_clock::now();
        try {
            CriterionOutcome o = c.run(seed);
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception &e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.seconds > r.budget_seconds) {
            r.passed = false;
            r.detail += "; runtime over budget";
        }
        if (progress != nullptr) {
            *progress << format_result(r) << '\n' << std::flush;
        }
        results.push_back(r);
    }
    return results;
}

std::string format_result(const CriterionResult &r) {
    std::ostringstream s;
    s << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << "  (" << std::fixed << std::setprecision(2)
      << r.seconds << " s / " << std::setprecision(0) << r.budget_seconds << " s)  " << r.detail;
    return s.str();
}

}  // namespace qpca
