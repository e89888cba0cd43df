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

#include "qfid/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfid/error.hpp"
#include "qfid/haar_mc.hpp"

namespace qfid {

double completeness_error(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) throw ValidationError("Kraus set is empty");
  const std::size_t n = kraus.front().cols();
  std::vector<Complex> sum(n * n);
  for (const ComplexMatrix& g : kraus) {
    if (g.cols() != n) throw ShapeError("Kraus operators have differing dimensions");
    // (G^dagger G)_ij = sum_r conj(G_ri) G_rj
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        const Complex gri = std::conj(g(r, i));
        for (std::size_t j = 0; j < n; ++j) sum[i * n + j] += gri * g(r, j);
      }
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex expected = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(sum[i * n + j] - expected));
    }
  }
  return worst;
}

KrausChannel make_channel(std::vector<ComplexMatrix> kraus) {
  if (kraus.empty()) throw ValidationError("make_channel: Kraus set is empty");
  const std::size_t n = kraus.front().rows();
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    if (!kraus[k].square() || kraus[k].rows() != n) {
      throw ShapeError("make_channel: Kraus operator " + std::to_string(k) + " is " +
                       kraus[k].shape() + ", expected " + std::to_string(n) + "x" +
                       std::to_string(n));
    }
  }
  const double defect = completeness_error(kraus);
  if (!(defect <= kCompletenessTolerance)) {
    std::ostringstream msg;
    msg << "make_channel: not trace preserving, ||sum_k G_k^dagger G_k - I||_max = " << defect;
    throw ValidationError(msg.str());
  }
  return KrausChannel(n, std::move(kraus));
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
  if (!matrix_.square()) {
    throw ShapeError("density matrix must be square, got " + matrix_.shape());
  }
  const double asym = max_abs_diff(matrix_, adjoint(matrix_));
  if (asym > 1e-12) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (max |rho - rho^dagger| = " << asym << ")";
    throw ValidationError(msg.str());
  }
  const Complex tr = trace(matrix_);
  if (std::abs(tr - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr.real() << ", expected 1";
    throw ValidationError(msg.str());
  }
  const double floor = hermitian_eigenvalues(matrix_).front();
  if (floor < -1e-9) {
    std::ostringstream msg;
    msg << "density matrix is not positive (min eigenvalue " << floor << ")";
    throw ValidationError(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  const std::size_t n = psi.dim();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = psi[i] * std::conj(psi[j]);
  }
  return DensityMatrix(ComplexMatrix(n, n, std::move(e)));
}

ComplexMatrix apply_to_operator(const KrausChannel& channel, const ComplexMatrix& x) {
  if (!x.square() || channel.dim() != x.rows()) {
    throw ShapeError("apply: channel acts on dimension " + std::to_string(channel.dim()) +
                     ", operand is " + x.shape());
  }
  ComplexMatrix out = ComplexMatrix::zeros(x.rows(), x.rows());
  for (const ComplexMatrix& g : channel.kraus()) out = out + g * x * adjoint(g);
  return out;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
  const ComplexMatrix out = apply_to_operator(channel, rho.matrix());
  return DensityMatrix(Complex(0.5) * (out + adjoint(out)), DensityMatrix::Trusted{});
}

KrausChannel pad(const KrausChannel& channel, std::size_t m) {
  if (m < channel.size()) {
    throw ValidationError("pad: target size " + std::to_string(m) + " is smaller than the " +
                          std::to_string(channel.size()) + " operators present");
  }
  std::vector<ComplexMatrix> kraus(channel.kraus().begin(), channel.kraus().end());
  kraus.resize(m, ComplexMatrix::zeros(channel.dim(), channel.dim()));
  return make_channel(std::move(kraus));
}

KrausChannel remix(const KrausChannel& channel, const ComplexMatrix& v) {
  if (!v.square() || v.rows() != channel.size()) {
    throw ShapeError("remix: mixing matrix is " + v.shape() + " but the channel has " +
                     std::to_string(channel.size()) + " Kraus operators (pad first)");
  }
  if (!is_unitary(v)) throw ValidationError("remix: mixing matrix is not unitary");
  const std::size_t n = channel.dim();
  std::vector<ComplexMatrix> out;
  out.reserve(channel.size());
  for (std::size_t k = 0; k < channel.size(); ++k) {
    std::vector<Complex> e(n * n);
    for (std::size_t j = 0; j < channel.size(); ++j) {
      const Complex vkj = v(k, j);
      const auto g = channel[j].entries();
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += vkj * g[i];
    }
    out.emplace_back(n, n, std::move(e));
  }
  return make_channel(std::move(out));
}

KrausChannel unitary_channel(const ComplexMatrix& u) {
  if (!is_unitary(u)) throw ValidationError("unitary_channel: operator is not unitary");
  return make_channel({u});
}

KrausChannel depolarizing_channel(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("depolarizing_channel: p must lie in [0, 1], got " +
                          std::to_string(p));
  }
  const Complex keep = std::sqrt(3.0 * p + 1.0) / 2.0;
  const Complex flip = std::sqrt(1.0 - p) / 2.0;
  return make_channel({keep * ComplexMatrix::identity(2), flip * pauli::x(), flip * pauli::y(),
                       flip * pauli::z()});
}

KrausChannel amplitude_damping_channel(double gamma_t) {
  if (!(gamma_t >= 0.0) || !std::isfinite(gamma_t)) {
    throw ValidationError("amplitude_damping_channel: gamma_t must be finite and >= 0, got " +
                          std::to_string(gamma_t));
  }
  const double survive = std::exp(-gamma_t / 2.0);
  const double jump = std::sqrt(-std::expm1(-gamma_t));
  return make_channel({ComplexMatrix::diagonal({1.0, survive}),
                       ComplexMatrix{{0.0, jump}, {0.0, 0.0}}});
}

KrausChannel tensor_power(const KrausChannel& channel, std::size_t k,
                          const TensorPowerBudget& budget) {
  if (k == 0) throw ValidationError("tensor_power: K must be at least 1");
  std::size_t dim = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (dim > budget.max_dim / channel.dim()) {
      std::ostringstream msg;
      msg << "tensor_power: dimension " << channel.dim() << "^" << k << " exceeds the budget of "
          << budget.max_dim << " (with " << channel.size() << "^" << k << " Kraus operators)";
      throw BudgetError(msg.str());
    }
    dim *= channel.dim();
  }
  std::vector<ComplexMatrix> current(channel.kraus().begin(), channel.kraus().end());
  for (std::size_t i = 1; i < k; ++i) {
    std::vector<ComplexMatrix> next;
    next.reserve(current.size() * channel.size());
    for (const ComplexMatrix& a : current) {
      for (const ComplexMatrix& g : channel.kraus()) next.push_back(kron(a, g));
    }
    current = std::move(next);
  }
  return make_channel(std::move(current));
}

}  // namespace qfid
