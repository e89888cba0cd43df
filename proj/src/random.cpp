/* Copyright 2026 The qfid Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "qfid/random.hpp"

#include <cmath>

namespace qfid {

ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, SplitMix64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<Complex> e(rows * cols);
  for (Complex& z : e) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = {re, im};
  }
  return {rows, cols, std::move(e)};
}

ComplexMatrix random_unitary(std::size_t n, SplitMix64& rng) {
  const ComplexMatrix g = random_gaussian_matrix(n, n, rng);
  // Column-wise modified Gram-Schmidt, columns stored as rows of `q`.
  std::vector<std::vector<Complex>> q(n, std::vector<Complex>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) q[j][i] = g(i, j);
    for (std::size_t k = 0; k < j; ++k) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(q[k][i]) * q[j][i];
      for (std::size_t i = 0; i < n; ++i) q[j][i] -= proj * q[k][i];
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(q[j][i]);
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q[j][i] /= norm;
  }
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = q[j][i];
  }
  return {n, n, std::move(e)};
}

ComplexMatrix random_hermitian(std::size_t n, SplitMix64& rng) {
  const ComplexMatrix g = random_gaussian_matrix(n, n, rng);
  return Complex(0.5) * (g + adjoint(g));
}

ComplexMatrix random_antihermitian(std::size_t n, SplitMix64& rng) {
  const ComplexMatrix g = random_gaussian_matrix(n, n, rng);
  return Complex(0.5) * (g - adjoint(g));
}

ComplexMatrix random_density_matrix(std::size_t n, SplitMix64& rng) {
  const ComplexMatrix g = random_gaussian_matrix(n, n, rng);
  const ComplexMatrix gg = g * adjoint(g);
  const ComplexMatrix rho = Complex(1.0 / trace(gg).real()) * gg;
  // Exact Hermitian symmetry.
  return Complex(0.5) * (rho + adjoint(rho));
}

}  // namespace qfid
