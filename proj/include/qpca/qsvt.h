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

#ifndef QPCA_QSVT_H
#define QPCA_QSVT_H

#include <cstddef>
#include <optional>
#include <vector>

#include "qpca/blockenc.h"
#include "qpca/dme.h"
#include "qpca/linalg.h"

namespace qpca {

enum class Parity { Even, Odd, None };

/// Chebyshev series sum_k c_k T_k(x).
class Polynomial {
   public:
    /// sup_bound defaults to sum |c_k|, which is certified since |T_k| <= 1.
    explicit Polynomial(std::vector<double> coeffs, std::optional<double> sup_bound = std::nullopt);

    double operator()(double x) const;
    std::size_t degree() const {
        return coeffs_.size() - 1;
    }
    const std::vector<double> &coeffs() const {
        return coeffs_;
    }
    Parity parity() const {
        return parity_;
    }
    double sup_bound() const {
        return sup_bound_;
    }

   private:
    std::vector<double> coeffs_;
    Parity parity_;
    double sup_bound_;
};

/// Chebyshev coefficients of sum_k m_k x^k.
std::vector<double> monomial_to_chebyshev(const std::vector<double> &monomial);

/// Truncated Taylor series of arcsin(x)/pi. Error <= eps_poly for |x| <= sin(1/2);
/// all coefficients are positive so sup on [-1, 1] is P(1) < 1/2.
Polynomial arcsin_poly(double eps_poly);

/// Encoding of P(A/alpha) with alpha = 1, a + 2 ancillas and eps = 4d sqrt(eps/alpha).
BlockEncoding eigen_poly_transform(const BlockEncoding &be, const Polynomial &p);

enum class LogMode { Oracle, Polynomial };

/// Encoding of 2H/pi for an encoded unitary U = exp(-iH), |H| <= 1/2. Polynomial
/// mode runs sin(H) by LCU of iU and -iU^+, then arcsin_poly; oracle mode takes
/// the exact principal logarithm. Both carry the same ledger and error claim.
BlockEncoding log_unitary(const BlockEncoding &u, double eps, LogMode mode = LogMode::Polynomial);

/// m = ceil(c (gamma/delta) ln(gamma/eps)) uses of U and U^+, one ancilla.
std::size_t amplify_rounds(double gamma, double delta, double eps, double c = 1);
ResourceLedger amplify_cost(double gamma, double delta, double eps, double c = 1);

/// Oracle-mode amplification to an encoding of gamma A with the same alpha: the
/// block is multiplied by gamma exactly and eps becomes gamma eps + eps_amp.
/// Depth is multiplied by m and m calls are added. Needs |block| <= (1 - delta) / gamma.
BlockEncoding amplify(const BlockEncoding &be, double gamma, double delta, double eps_amp, double c = 1);

/// Supplier of copies of rho; `copy_cost` is the rho-copies charged per copy.
struct RhoSource {
    DensityMatrix rho;
    double copy_cost = 1;
};

struct DensityEncodingOptions {
    double c_dme = 1;
    /// Accuracy of the logarithm stage; tightened to eps/4 when that is smaller.
    double poly_delta = 1e-3;
    double amp_delta = 0.1;
    double c_amp = 1;
};

/// Encoding of pi rho / 4 with alpha = 1: exp(-i rho/2) by DME at accuracy
/// eps^2, log_unitary to rho/pi, then amplification by pi^2/4.
BlockEncoding block_encode_density(
    const RhoSource &source,
    double eps,
    DmeMode dme_mode,
    LogMode log_mode = LogMode::Oracle,
    const DensityEncodingOptions &options = {});

}  // namespace qpca

#endif
