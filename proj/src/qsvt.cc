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

#include "qpca/qsvt.h"

#include <cmath>
#include <sstream>

#include "qpca/error.h"

namespace qpca {

namespace {

constexpr double kParityTol = 1e-15;

void check_accuracy(double eps, double hi, const char *what) {
    if (!(eps > 0) || !(eps <= hi)) {
        std::ostringstream msg;
        msg << what << " " << eps << " outside (0, " << hi << "]";
        throw Error(ErrorCode::InvalidAccuracy, msg.str());
    }
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs, std::optional<double> sup_bound) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        coeffs_.push_back(0);
    }
    bool even_zero = true;
    bool odd_zero = true;
    double l1 = 0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        l1 += std::abs(coeffs_[k]);
        if (std::abs(coeffs_[k]) > kParityTol) {
            (k % 2 == 0 ? even_zero : odd_zero) = false;
        }
    }
    parity_ = odd_zero ? Parity::Even : (even_zero ? Parity::Odd : Parity::None);
    sup_bound_ = sup_bound.value_or(l1);
}

double Polynomial::operator()(double x) const {
    // Clenshaw recurrence.
    double b1 = 0;
    double b2 = 0;
    for (std::size_t k = coeffs_.size(); k-- > 1;) {
        double b0 = coeffs_[k] + 2 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return coeffs_[0] + x * b1 - b2;
}

std::vector<double> monomial_to_chebyshev(const std::vector<double> &monomial) {
    std::vector<double> cheb(std::max<std::size_t>(monomial.size(), 1), 0.0);
    for (std::size_t k = 0; k < monomial.size(); ++k) {
        if (monomial[k] == 0) {
            continue;
        }
        // x^k = 2^{1-k} sum_{i < k/2} C(k,i) T_{k-2i} + [k even] 2^{-k} C(k,k/2) T_0.
        double binom = 1;
        double scale = std::ldexp(1.0, 1 - static_cast<int>(k));
        for (std::size_t i = 0; 2 * i <= k; ++i) {
            if (2 * i == k) {
                cheb[0] += monomial[k] * binom * scale / 2;
            } else {
                cheb[k - 2 * i] += monomial[k] * binom * scale;
            }
            binom = binom * static_cast<double>(k - i) / static_cast<double>(i + 1);
        }
    }
    return cheb;
}

Polynomial arcsin_poly(double eps_poly) {
    check_accuracy(eps_poly, 0.5, "polynomial accuracy");
    const double s = std::sin(0.5);
    std::vector<double> monomial;
    double a = 1;  // (2j)! / (4^j (j!)^2)
    double value_at_one = 0;
    for (std::size_t j = 0;; ++j) {
        double c = a / static_cast<double>(2 * j + 1) / M_PI;
        monomial.resize(2 * j + 2, 0.0);
        monomial[2 * j + 1] = c;
        value_at_one += c;
        a *= static_cast<double>(2 * j + 1) / static_cast<double>(2 * j + 2);
        double next = a / static_cast<double>(2 * j + 3) / M_PI;
        double tail = next * std::pow(s, static_cast<double>(2 * j + 3)) / (1 - s * s);
        if (tail <= eps_poly) {
            break;
        }
    }
    return Polynomial(monomial_to_chebyshev(monomial), value_at_one);
}

BlockEncoding eigen_poly_transform(const BlockEncoding &be, const Polynomial &p) {
    if (p.sup_bound() > 0.5 + 1e-12) {
        std::ostringstream msg;
        msg << "sup bound " << p.sup_bound() << " exceeds 1/2";
        throw Error(ErrorCode::SupNormViolation, msg.str());
    }
    ComplexMatrix block = extract_block(be);
    double defect = hermiticity_defect(block);
    if (defect > 1e-6) {
        std::ostringstream msg;
        msg << "encoded block has Hermiticity defect " << defect;
        throw Error(ErrorCode::NotHermitianTarget, msg.str());
    }
    ComplexMatrix out = matrix_function(hermitian_part(block), [&p](double x) { return Complex(p(x)); });
    auto d = static_cast<double>(p.degree());
    double eps = 4 * d * std::sqrt(be.eps() / be.alpha());
    ResourceLedger ledger = be.ledger();
    ledger.circuit_depth *= std::max(1.0, d);
    ledger.unitary_calls += d;
    ledger.ancilla_qubits += 2;
    return encode_block(out, 1, eps, be.ancillas() + 2, ledger);
}

BlockEncoding log_unitary(const BlockEncoding &u, double eps, LogMode mode) {
    check_accuracy(eps, 0.5, "log accuracy");
    ComplexMatrix block = extract_block(u);
    if (unitarity_defect(block) > 1e-6) {
        throw Error(ErrorCode::NotUnitary, "encoded block is not unitary");
    }
    ComplexMatrix h;
    try {
        h = principal_log_unitary(nearest_unitary(block));
    } catch (const Error &e) {
        if (e.code() != ErrorCode::PhaseWrapRisk) {
            throw;
        }
        throw Error(ErrorCode::PhaseOutOfRange, e.what());
    }
    double hn = spectral_norm(h);
    if (hn > 0.5 + 1e-9) {
        std::ostringstream msg;
        msg << "|H| = " << hn << " exceeds 1/2";
        throw Error(ErrorCode::PhaseOutOfRange, msg.str());
    }
    // sin H = (i U - i U^+) / 2.
    BlockEncoding sin_h = lcu({0.5, 0.5}, {with_phase(u, Complex(0, 1)), with_phase(adjoint(u), Complex(0, -1))});
    // U and U^+ come from one encoding; its copies are paid once.
    ResourceLedger sin_ledger = sin_h.ledger();
    sin_ledger.rho_copies = u.ledger().rho_copies;
    sin_h = sin_h.with_ledger(sin_ledger);
    BlockEncoding h_over_pi = eigen_poly_transform(sin_h, arcsin_poly(eps / 4));
    h_over_pi = h_over_pi.with_eps(h_over_pi.eps() + eps / 4);
    if (mode == LogMode::Oracle) {
        h_over_pi = encode_block(
            hermitian_part(h) / M_PI, 1, h_over_pi.eps(), h_over_pi.ancillas(), h_over_pi.ledger());
    }
    return amplify(h_over_pi, 2, 0.2, eps / 2);
}

std::size_t amplify_rounds(double gamma, double delta, double eps, double c) {
    if (!(gamma > 1) || !(delta > 0 && delta < 0.5) || !(eps > 0 && eps < 0.5) || !(c > 0)) {
        std::ostringstream msg;
        msg << "amplification needs gamma > 1 and delta, eps in (0, 1/2); got " << gamma << ", " << delta << ", "
            << eps;
        throw Error(ErrorCode::InvalidParameters, msg.str());
    }
    return static_cast<std::size_t>(std::ceil(c * (gamma / delta) * std::log(gamma / eps)));
}

ResourceLedger amplify_cost(double gamma, double delta, double eps, double c) {
    auto m = static_cast<double>(amplify_rounds(gamma, delta, eps, c));
    return {0, m, 1, m};
}

BlockEncoding amplify(const BlockEncoding &be, double gamma, double delta, double eps_amp, double c) {
    auto m = static_cast<double>(amplify_rounds(gamma, delta, eps_amp, c));
    ComplexMatrix block = extract_block(be);
    double norm = spectral_norm(block);
    if (norm > (1 - delta) / gamma + 1e-12) {
        std::ostringstream msg;
        msg << "block norm " << norm << " exceeds (1 - delta)/gamma = " << (1 - delta) / gamma;
        throw Error(ErrorCode::InvalidParameters, msg.str());
    }
    ResourceLedger ledger = be.ledger();
    ledger.circuit_depth *= m;
    ledger.unitary_calls += m;
    ledger.ancilla_qubits += 1;
    return encode_block(gamma * block, be.alpha(), gamma * be.eps() + eps_amp, be.ancillas() + 1, ledger);
}

BlockEncoding block_encode_density(
    const RhoSource &source, double eps, DmeMode dme_mode, LogMode log_mode, const DensityEncodingOptions &options) {
    if (!(eps > 0) || !(eps < 0.5)) {
        std::ostringstream msg;
        msg << "accuracy " << eps << " outside (0, 1/2)";
        throw Error(ErrorCode::InvalidAccuracy, msg.str());
    }
    BlockEncoding u = dme_unitary_encoding(source.rho, 0.5, eps * eps, dme_mode, {options.c_dme});
    ResourceLedger ledger = u.ledger();
    ledger.rho_copies *= source.copy_cost;
    u = u.with_ledger(ledger);
    BlockEncoding rho_over_pi = log_unitary(u, std::min(options.poly_delta, eps / 4), log_mode);
    return amplify(rho_over_pi, M_PI * M_PI / 4, options.amp_delta, eps / 2, options.c_amp);
}

}  // namespace qpca
