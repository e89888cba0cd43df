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

#ifndef QFID_CHANNELS_HPP_
#define QFID_CHANNELS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "qfid/matrix.hpp"

namespace qfid {

class PureState;

inline constexpr double kCompletenessTolerance = 1e-9;

/// max-entry norm of sum_k G_k^dagger G_k - I.
double completeness_error(std::span<const ComplexMatrix> kraus);

/// Trace-preserving map rho -> sum_k G_k rho G_k^dagger on C^n. Construct
/// through make_channel or one of the named channels below.
class KrausChannel {
 public:
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return kraus_.size(); }
  std::span<const ComplexMatrix> kraus() const noexcept { return kraus_; }
  const ComplexMatrix& operator[](std::size_t k) const noexcept { return kraus_[k]; }

 private:
  friend KrausChannel make_channel(std::vector<ComplexMatrix> kraus);
  KrausChannel(std::size_t dim, std::vector<ComplexMatrix> kraus)
      : dim_(dim), kraus_(std::move(kraus)) {}

  std::size_t dim_;
  std::vector<ComplexMatrix> kraus_;
};

/// Validates shapes and sum_k G_k^dagger G_k = I within
/// kCompletenessTolerance. Throws ShapeError / ValidationError; the latter
/// reports the completeness defect.
KrausChannel make_channel(std::vector<ComplexMatrix> kraus);

/// Hermitian, unit-trace, positive semidefinite (eigenvalue floor -1e-9).
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix pure(const PureState& psi);

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  struct Trusted {};
  DensityMatrix(ComplexMatrix m, Trusted) : matrix_(std::move(m)) {}
  friend DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

  ComplexMatrix matrix_;
};

/// sum_k G_k X G_k^dagger for an arbitrary n x n operator X (the linear
/// extension of the channel).
ComplexMatrix apply_to_operator(const KrausChannel& channel, const ComplexMatrix& x);

/// G(rho) = sum_k G_k rho G_k^dagger. The result is symmetrized to exact
/// Hermiticity; its trace deviates from 1 by at most the channel's
/// completeness defect times n.
DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

/// Appends zero operators until the set has m elements. m >= size().
KrausChannel pad(const KrausChannel& channel, std::size_t m);

/// G'_k = sum_j V_kj G_j. V must be unitary with side equal to size(); pad
/// first to remix into a larger set.
KrausChannel remix(const KrausChannel& channel, const ComplexMatrix& v);

KrausChannel unitary_channel(const ComplexMatrix& u);

/// Qubit kept with probability p, replaced by I/2 otherwise. Kraus set
/// {sqrt(3p+1)/2 I, sqrt(1-p)/2 sigma_x, sqrt(1-p)/2 sigma_y, sqrt(1-p)/2 sigma_z}.
KrausChannel depolarizing_channel(double p);

/// Decay of the upper level |1> to |0> after time t at rate Gamma, given
/// gamma_t = Gamma t. Kraus set {diag(1, e^{-gamma_t/2}), sqrt(1-e^{-gamma_t}) |0><1|}.
KrausChannel amplitude_damping_channel(double gamma_t);

struct TensorPowerBudget {
  std::size_t max_dim = 64;
};

/// K-fold product channel on C^{n^K}; Kraus operators are all Kronecker
/// products G_{k1} x ... x G_{kK}, the index vector enumerated row-major
/// (k_K varies fastest). Throws BudgetError when n^K exceeds the budget.
KrausChannel tensor_power(const KrausChannel& channel, std::size_t k,
                          const TensorPowerBudget& budget = {});

}  // namespace qfid

#endif  // QFID_CHANNELS_HPP_
