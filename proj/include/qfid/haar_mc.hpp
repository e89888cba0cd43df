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

#ifndef QFID_HAAR_MC_HPP_
#define QFID_HAAR_MC_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qfid/matrix.hpp"
#include "qfid/random.hpp"

namespace qfid {

class KrausChannel;

/// Normalized amplitude vector on the unit sphere of C^n.
class PureState {
 public:
  /// Throws ValidationError unless sum |c_j|^2 = 1 within 1e-12.
  explicit PureState(std::vector<Complex> amplitudes);

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t j) const noexcept { return amplitudes_[j]; }

 private:
  std::vector<Complex> amplitudes_;
};

/// Uniform (Haar) pure state: 2n i.i.d. standard normals as real and
/// imaginary parts, normalized.
PureState sample_haar_state(std::size_t n, SplitMix64& rng);

/// Sample `index` of the counter-based stream keyed by `seed`.
PureState haar_state_at(std::size_t n, std::uint64_t seed, std::uint64_t index);

/// Sample mean with plain standard error (sample stddev / sqrt(N)).
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const McEstimate&, const McEstimate&) = default;
};

inline constexpr std::uint64_t kDefaultSamples = 100000;

struct McOptions {
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = 0;
  /// 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  unsigned workers = 0;
};

/// Evaluated on the amplitudes of one Haar sample; must be thread-safe.
using StateIntegrand = std::function<double(std::span<const Complex>)>;

/// Monte Carlo average of an arbitrary integrand over Haar states in C^n.
/// Sample i is drawn from SplitMix64::stream(seed, i); partial sums are
/// combined in a fixed block order, so the estimate is bit-identical for any
/// worker count.
McEstimate mc_state_average(std::size_t n, const StateIntegrand& integrand,
                            const McOptions& options);

/// Minimum of an integrand over the same sample set.
double mc_state_minimum(std::size_t n, const StateIntegrand& integrand,
                        const McOptions& options);

/// Estimates the Haar average of |<psi|M|psi>|^2.
McEstimate mc_quadratic_form_average(const ComplexMatrix& m, const McOptions& options);

/// Estimates the Haar average of <psi|U0^dagger G(|psi><psi|) U0|psi>, i.e.
/// sum_k |<psi|U0^dagger G_k|psi>|^2, without forming the density matrix.
McEstimate mc_channel_fidelity(const ComplexMatrix& target, const KrausChannel& channel,
                               const McOptions& options);

}  // namespace qfid

#endif  // QFID_HAAR_MC_HPP_
