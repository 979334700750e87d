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

#ifndef QPCA_LINALG_H
#define QPCA_LINALG_H

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace qpca {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianInputTol = 1e-8;
inline constexpr double kUnitaryInputTol = 1e-8;
inline constexpr double kConstructionTol = 1e-10;

bool is_power_of_two(std::size_t n);
std::size_t log2_exact(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

double spectral_norm(const ComplexMatrix &a);
double frobenius_norm(const ComplexMatrix &a);
/// Sum of singular values.
double trace_norm(const ComplexMatrix &a);
double hermiticity_defect(const ComplexMatrix &a);
double unitarity_defect(const ComplexMatrix &u);
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix hermitian_part(const ComplexMatrix &a);
/// SWAP on C^n (x) C^n.
ComplexMatrix swap_matrix(std::size_t n);
/// Tr_1 of an operator on C^{d1} (x) C^{d2}.
ComplexMatrix partial_trace_first(const ComplexMatrix &a, std::size_t d1, std::size_t d2);

/// min over global phases phi of |e^{i phi} a - b|_2.
double phase_distance(const ComplexVector &a, const ComplexVector &b);

/// Hermitian, positive semidefinite, unit-trace matrix on a power-of-two dimension.
class DensityMatrix {
   public:
    /// Validates: Hermitian within 1e-10, trace 1 within 1e-10, min eigenvalue >= -1e-10.
    explicit DensityMatrix(ComplexMatrix m);
    static DensityMatrix pure(const ComplexVector &psi);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const {
        return static_cast<std::size_t>(m_.rows());
    }
    const ComplexMatrix &matrix() const {
        return m_;
    }

   private:
    ComplexMatrix m_;
};

/// Eigenpairs ordered by descending eigenvalue magnitude.
struct Spectrum {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;  // column i pairs with eigenvalue i
    double gap = 0;              // |r_1 - r_2|

    std::size_t size() const {
        return static_cast<std::size_t>(eigenvalues.size());
    }
    ComplexVector vector(std::size_t i) const {
        return eigenvectors.col(static_cast<Eigen::Index>(i));
    }
};

/// Exact Hermitian eigendecomposition. Each eigenvector's largest-magnitude
/// component is made real positive (lowest index wins ties).
Spectrum eigh(const ComplexMatrix &a);

/// Sum f(r_i) v_i v_i^dagger over the eigendecomposition of a Hermitian matrix.
ComplexMatrix matrix_function(const ComplexMatrix &a, const std::function<Complex(double)> &f);

/// H with U = exp(-iH) and spectrum of H inside (-pi, pi). Eigenphases within
/// 0.1 of +-pi are rejected.
ComplexMatrix principal_log_unitary(const ComplexMatrix &u);

/// Unitary nearest to `a` in Frobenius norm (polar factor).
ComplexMatrix nearest_unitary(const ComplexMatrix &a);

}  // namespace qpca

#endif
