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

#include "qpca/random.h"

#include <Eigen/QR>

namespace qpca {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            double re = g(rng);
            double im = g(rng);
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

}  // namespace

ComplexVector random_state(std::size_t dim, Rng &rng) {
    ComplexVector v = ginibre(dim, 1, rng).col(0);
    return v / v.norm();
}

ComplexMatrix haar_unitary(std::size_t dim, Rng &rng) {
    ComplexMatrix z = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < q.cols(); i++) {
        Complex d = r(i, i);
        if (std::abs(d) > 0) {
            q.col(i) *= d / std::abs(d);
        }
    }
    return q;
}

ComplexMatrix random_hermitian(std::size_t dim, double norm, Rng &rng) {
    ComplexMatrix z = ginibre(dim, dim, rng);
    ComplexMatrix h = hermitian_part(z);
    return h * (norm / spectral_norm(h));
}

ComplexMatrix planted_matrix(const std::vector<double> &spectrum, std::size_t dim, Rng &rng) {
    ComplexMatrix v = haar_unitary(dim, rng);
    RealVector d = RealVector::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < spectrum.size() && i < dim; i++) {
        d(static_cast<Eigen::Index>(i)) = spectrum[i];
    }
    return hermitian_part(v * d.cast<Complex>().asDiagonal() * v.adjoint());
}

ComplexMatrix random_density(std::size_t dim, Rng &rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(dim);
    double total = 0;
    for (auto &x : w) {
        x = e(rng);
        total += x;
    }
    for (auto &x : w) {
        x /= total;
    }
    ComplexMatrix m = planted_matrix(w, dim, rng);
    return m / m.trace().real();
}

}  // namespace qpca
