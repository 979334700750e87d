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

#include "qpca/covariance.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qpca/error.h"

namespace qpca {

namespace {

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_error(std::size_t row, std::size_t col, const std::string &what) {
    std::ostringstream msg;
    msg << "row " << row << ", column " << col << ": " << what;
    throw Error(ErrorCode::ParseError, msg.str());
}

bool parse_real(const std::string &s, double &out) {
    if (s.empty()) {
        return false;
    }
    const char *first = s.data();
    const char *last = s.data() + s.size();
    if (*first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

Complex parse_field(const std::string &raw, std::size_t row, std::size_t col) {
    std::string field = trim(raw);
    auto colon = field.find(':');
    double re = 0;
    double im = 0;
    if (colon == std::string::npos) {
        if (!parse_real(field, re)) {
            parse_error(row, col, "cannot parse '" + field + "'");
        }
    } else if (!parse_real(trim(field.substr(0, colon)), re) || !parse_real(trim(field.substr(colon + 1)), im)) {
        parse_error(row, col, "cannot parse complex field '" + field + "'");
    }
    return {re, im};
}

}  // namespace

Dataset make_dataset(const std::vector<ComplexVector> &raw, std::vector<double> weights) {
    if (raw.empty()) {
        throw Error(ErrorCode::EmptyDataset, "no data points");
    }
    if (weights.empty()) {
        weights.assign(raw.size(), 1.0);
    }
    if (weights.size() != raw.size()) {
        throw Error(ErrorCode::DimensionMismatch, "one weight per point is required");
    }
    double total = 0;
    for (double w : weights) {
        if (w < 0 || !std::isfinite(w)) {
            throw Error(ErrorCode::NegativeWeight, "weights must be nonnegative");
        }
        total += w;
    }
    if (!(total > 0)) {
        throw Error(ErrorCode::WeightSumZero, "weights sum to zero");
    }
    Dataset ds;
    ds.original_dim = static_cast<std::size_t>(raw.front().size());
    ds.n = std::max<std::size_t>(2, next_power_of_two(ds.original_dim));
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (static_cast<std::size_t>(raw[i].size()) != ds.original_dim) {
            throw Error(ErrorCode::DimensionMismatch, "points differ in dimension");
        }
        double norm = raw[i].norm();
        if (!(norm > 0)) {
            std::ostringstream msg;
            msg << "point " << i + 1 << " is zero";
            throw Error(ErrorCode::ZeroVector, msg.str());
        }
        ComplexVector x = ComplexVector::Zero(static_cast<Eigen::Index>(ds.n));
        x.head(raw[i].size()) = raw[i] / norm;
        ds.points.push_back(x);
        ds.raw_norms.push_back(norm);
        ds.weights.push_back(weights[i] / total);
    }
    return ds;
}

Dataset parse_dataset(std::istream &in, WeightMode mode) {
    std::vector<ComplexVector> raw;
    std::vector<double> weights;
    std::string line;
    std::size_t row = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++row;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(t);
        std::string f;
        while (std::getline(ss, f, ',')) {
            fields.push_back(f);
        }
        if (!t.empty() && t.back() == ',') {
            fields.emplace_back();
        }
        std::size_t data_fields = fields.size();
        if (mode == WeightMode::Column) {
            if (fields.size() < 2) {
                parse_error(row, fields.size(), "need at least one value and a weight");
            }
            --data_fields;
            double w = 0;
            if (!parse_real(trim(fields.back()), w)) {
                parse_error(row, fields.size(), "cannot parse weight '" + trim(fields.back()) + "'");
            }
            if (w < 0) {
                std::ostringstream msg;
                msg << "row " << row << ": negative weight " << w;
                throw Error(ErrorCode::NegativeWeight, msg.str());
            }
            weights.push_back(w);
        }
        if (width == 0) {
            width = data_fields;
        } else if (data_fields != width) {
            std::ostringstream msg;
            msg << "expected " << width << " values, found " << data_fields;
            parse_error(row, data_fields, msg.str());
        }
        ComplexVector x(static_cast<Eigen::Index>(data_fields));
        for (std::size_t c = 0; c < data_fields; ++c) {
            x(static_cast<Eigen::Index>(c)) = parse_field(fields[c], row, c + 1);
        }
        raw.push_back(x);
    }
    if (raw.empty()) {
        throw Error(ErrorCode::EmptyDataset, "no data rows");
    }
    return make_dataset(raw, weights);
}

Dataset load_dataset(const std::string &path, WeightMode mode) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    }
    return parse_dataset(in, mode);
}

ComplexVector centroid(const Dataset &ds) {
    ComplexVector mu = ComplexVector::Zero(static_cast<Eigen::Index>(ds.n));
    for (std::size_t i = 0; i < ds.size(); ++i) {
        mu += ds.weights[i] * ds.points[i];
    }
    return mu;
}

ComplexMatrix covariance_classical(const Dataset &ds, bool centered) {
    auto n = static_cast<Eigen::Index>(ds.n);
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        a += ds.weights[i] * ds.points[i] * ds.points[i].adjoint();
    }
    if (centered) {
        ComplexVector mu = centroid(ds);
        a -= mu * mu.adjoint();
    }
    return a;
}

ComplexMatrix state_prep_unitary(const ComplexVector &x) {
    return unitary_with_first_column(x);
}

BlockEncoding mean_encoding(const Dataset &ds) {
    std::vector<BlockEncoding> preps;
    std::vector<double> weights;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds.weights[i] > 0) {
            preps.push_back(encode_self(state_prep_unitary(ds.points[i]), 1));
            weights.push_back(ds.weights[i]);
        }
    }
    // First column of the LCU unitary is |0> (sum_i p_i x_i) + |junk>.
    BlockEncoding up = lcu(weights, preps);
    auto dim = static_cast<std::size_t>(up.unitary().rows());
    BlockEncoding pure = purify_density(up.unitary(), 1, dim, up.ledger().circuit_depth);
    BlockEncoding out = reinterpret_as_ancilla(pure, up.register_qubits());
    ResourceLedger ledger = out.ledger();
    ledger.unitary_calls += 2 * up.ledger().unitary_calls - 2;
    return out.with_ledger(ledger);
}

CovarianceBundle covariance_encoding(const Dataset &ds, Route route, double eps, const CovarianceOptions &options) {
    ComplexVector mu = centroid(ds);
    ComplexMatrix rho_bar = covariance_classical(ds, false);
    DensityMatrix rho(hermitian_part(rho_bar));
    BlockEncoding mean = scale_down(mean_encoding(ds), 4 / M_PI);
    BlockEncoding rho_enc = [&] {
        if (route == Route::A) {
            return block_encode_density({rho, 1}, eps, DmeMode::SampleFaithful, options.log_mode, options.density);
        }
        std::vector<BlockEncoding> points;
        std::vector<double> weights;
        double depth = std::max(1.0, std::log2(static_cast<double>(ds.n)));
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (ds.weights[i] > 0) {
                points.push_back(purify_density(state_prep_unitary(ds.points[i]), 1, ds.n, depth));
                weights.push_back(ds.weights[i]);
            }
        }
        return scale_down(lcu(weights, points), 4 / M_PI);
    }();
    BlockEncoding enc = lcu({1, 1}, {rho_enc, mean}, {1, -1});
    ResourceLedger ledger = enc.ledger();
    return CovarianceBundle{mu, rho, rho_bar - mu * mu.adjoint(), enc, route, ledger};
}

}  // namespace qpca
