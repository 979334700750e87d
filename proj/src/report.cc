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

#include "qpca/report.h"

#include "qpca/error.h"

namespace qpca {

Json to_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Json to_json(const ComplexVector &v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(to_json(v(i)));
    }
    return out;
}

Json to_json(const ComplexMatrix &m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(to_json(m(r, c)));
        }
        out.push_back(row);
    }
    return out;
}

Json to_json(const RealVector &v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

Json to_json(const ResourceLedger &ledger) {
    return {
        {"rho_copies", ledger.rho_copies},
        {"circuit_depth", ledger.circuit_depth},
        {"ancilla_qubits", ledger.ancilla_qubits},
        {"unitary_calls", ledger.unitary_calls},
    };
}

Json to_json(const BlockEncoding &be) {
    return {
        {"alpha", be.alpha()},
        {"ancillas", be.ancillas()},
        {"register_qubits", be.register_qubits()},
        {"eps", be.eps()},
        {"target_dim", be.target_dim()},
        {"ledger", to_json(be.ledger())},
        {"unitary", to_json(be.unitary())},
    };
}

Json to_json(const CovarianceBundle &bundle) {
    Spectrum s = eigh(bundle.centered_target);
    return {
        {"route", bundle.route == Route::A ? "A" : "B"},
        {"centroid", to_json(bundle.centroid)},
        {"centroid_norm_squared", bundle.centroid.squaredNorm()},
        {"target_spectrum", to_json(s.eigenvalues)},
        {"encoding_alpha", bundle.encoding.alpha()},
        {"encoding_eps", bundle.encoding.eps()},
        {"ledger", to_json(bundle.ledger)},
    };
}

Json to_json(const CostReport &report) {
    return {
        {"method", method_name(report.method)},
        {"convention", convention_name(report.params.convention)},
        {"copies", report.copies},
        {"depth", report.depth},
        {"depth_alt", report.depth_alt},
        {"params",
         {{"r_max", report.params.r_max},
          {"r_min", report.params.r_min},
          {"gamma", report.params.gamma},
          {"eps", report.params.eps},
          {"R", report.params.R},
          {"n", report.params.n}}},
    };
}

Json to_json(const EigenEstimate &estimate) {
    return {
        {"value", estimate.value},
        {"vector", to_json(estimate.vector)},
        {"residual", estimate.residual},
        {"k", estimate.k},
        {"ledger", to_json(estimate.ledger)},
    };
}

ComplexMatrix matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty() || !j.front().is_array()) {
        throw Error(ErrorCode::ParseError, "matrix must be a nonempty array of rows");
    }
    auto rows = static_cast<Eigen::Index>(j.size());
    auto cols = static_cast<Eigen::Index>(j.front().size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto &row = j[static_cast<std::size_t>(r)];
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw Error(ErrorCode::ParseError, "ragged matrix");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto &z = row[static_cast<std::size_t>(c)];
            m(r, c) = z.is_array() ? Complex(z.at(0).get<double>(), z.at(1).get<double>()) : Complex(z.get<double>());
        }
    }
    return m;
}

}  // namespace qpca
