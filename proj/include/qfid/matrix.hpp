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

#ifndef QFID_MATRIX_HPP_
#define QFID_MATRIX_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qfid {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Immutable once constructed; every entry is
/// checked to be finite at construction time.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  /// Nested-list literal, one inner list per row.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::initializer_list<Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * cols_ + j];
  }
  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<const Complex> row(std::size_t i) const noexcept {
    return std::span<const Complex>(entries_).subspan(i * cols_, cols_);
  }

  /// "RxC" for diagnostics.
  std::string shape() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_{ij} |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);

/// Square submatrix a[indices, indices].
ComplexMatrix principal_submatrix(const ComplexMatrix& a,
                                  std::span<const std::size_t> indices);

/// Matrix-vector product, y = A x.
std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> x);

inline constexpr double kUnitaryTolerance = 1e-9;

/// True iff max-entry-norm of A^dagger A - I is at most tol. Throws
/// ShapeError for non-square input.
bool is_unitary(const ComplexMatrix& a, double tol = kUnitaryTolerance);
bool is_hermitian(const ComplexMatrix& a, double tol);

/// Angles phi_j in (-pi, pi] with exp(i phi_j) the eigenvalues of a unitary
/// matrix, sorted ascending.
struct EigenphaseSet {
  std::vector<double> phases;
};

EigenphaseSet unitary_eigenphases(const ComplexMatrix& u);

/// Eigenvalues of a Hermitian matrix, ascending. Hermiticity is assumed.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace qfid

#endif  // QFID_MATRIX_HPP_
