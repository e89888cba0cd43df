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

#include "qfid/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "qfid/error.hpp"

namespace qfid {

namespace {

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMatrix> as_eigen(const ComplexMatrix& a) {
  return {a.entries().data(), static_cast<Eigen::Index>(a.rows()),
          static_cast<Eigen::Index>(a.cols())};
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.square()) {
    throw ShapeError(std::string(what) + ": matrix must be square, got " + a.shape());
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(what) + ": shape mismatch " + a.shape() + " vs " + b.shape());
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) {
    throw ShapeError("matrix dimensions must be positive, got " + shape());
  }
  if (entries_.size() != rows_ * cols_) {
    throw ShapeError("matrix " + shape() + " needs " + std::to_string(rows_ * cols_) +
                     " entries, got " + std::to_string(entries_.size()));
  }
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("matrix " + shape() + " contains a non-finite entry");
    }
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(
          rows.size(), rows.size() == 0 ? 0 : rows.begin()->size(),
          [&] {
            std::vector<Complex> out;
            const std::size_t width = rows.size() == 0 ? 0 : rows.begin()->size();
            for (const auto& r : rows) {
              if (r.size() != width) throw ShapeError("ragged matrix literal");
              out.insert(out.end(), r.begin(), r.end());
            }
            return out;
          }()) {}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return {rows, cols, std::vector<Complex>(rows * cols)};
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return {n, n, std::move(e)};
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  const std::size_t n = diag.size();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return {n, n, std::move(e)};
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> diag) {
  return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

std::string ComplexMatrix::shape() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  std::vector<Complex> e(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      e[j * a.rows() + i] = std::conj(a(i, j));
    }
  }
  return {a.cols(), a.rows(), std::move(e)};
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("multiply: inner dimensions differ, " + a.shape() + " * " + b.shape());
  }
  std::vector<Complex> e(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        e[i * b.cols() + j] += aik * b(k, j);
      }
    }
  }
  return {a.rows(), b.cols(), std::move(e)};
}

Complex trace(const ComplexMatrix& a) {
  require_square(a, "trace");
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  std::vector<Complex> e(rows * cols);
  for (std::size_t ia = 0; ia < a.rows(); ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Complex s = a(ia, ja);
      for (std::size_t ib = 0; ib < b.rows(); ++ib) {
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          e[(ia * b.rows() + ib) * cols + ja * b.cols() + jb] = s * b(ib, jb);
        }
      }
    }
  }
  return {rows, cols, std::move(e)};
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return multiply(a, b); }

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  std::vector<Complex> e(a.entries().begin(), a.entries().end());
  for (Complex& z : e) z *= s;
  return {a.rows(), a.cols(), std::move(e)};
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "add");
  std::vector<Complex> e(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries()[i];
  return {a.rows(), a.cols(), std::move(e)};
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "subtract");
  std::vector<Complex> e(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.entries()[i];
  return {a.rows(), a.cols(), std::move(e)};
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const Complex& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix principal_submatrix(const ComplexMatrix& a, std::span<const std::size_t> indices) {
  require_square(a, "principal_submatrix");
  const std::size_t m = indices.size();
  std::vector<Complex> e;
  e.reserve(m * m);
  for (std::size_t i : indices) {
    for (std::size_t j : indices) {
      if (i >= a.rows() || j >= a.rows()) {
        throw ShapeError("principal_submatrix: index out of range for " + a.shape());
      }
      e.push_back(a(i, j));
    }
  }
  return {m, m, std::move(e)};
}

std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> x) {
  if (x.size() != a.cols()) {
    throw ShapeError("matvec: matrix " + a.shape() + " vs vector of length " +
                     std::to_string(x.size()));
  }
  std::vector<Complex> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  require_square(a, "is_unitary");
  return max_abs_diff(adjoint(a) * a, ComplexMatrix::identity(a.rows())) <= tol;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  require_square(a, "is_hermitian");
  return max_abs_diff(a, adjoint(a)) <= tol;
}

EigenphaseSet unitary_eigenphases(const ComplexMatrix& u) {
  if (!is_unitary(u, kUnitaryTolerance)) {
    throw ValidationError("unitary_eigenphases: input " + u.shape() + " is not unitary");
  }
  const EigenMatrix dense = as_eigen(u);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(dense, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("unitary_eigenphases: eigenvalue iteration did not converge");
  }
  EigenphaseSet out;
  out.phases.reserve(u.rows());
  for (Eigen::Index j = 0; j < solver.eigenvalues().size(); ++j) {
    const Complex lambda = solver.eigenvalues()(j);
    const double modulus = std::abs(lambda);
    if (std::abs(modulus - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << "unitary_eigenphases: eigenvalue modulus " << modulus << " is off the unit circle";
      throw ConvergenceError(msg.str());
    }
    double phi = std::arg(lambda / modulus);
    if (phi <= -std::numbers::pi) phi = std::numbers::pi;
    out.phases.push_back(phi);
  }
  std::sort(out.phases.begin(), out.phases.end());
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  require_square(h, "hermitian_eigenvalues");
  const EigenMatrix dense = as_eigen(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("hermitian_eigenvalues: eigenvalue iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

namespace pauli {
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

}  // namespace qfid
