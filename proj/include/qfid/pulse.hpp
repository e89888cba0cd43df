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

#ifndef QFID_PULSE_HPP_
#define QFID_PULSE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "qfid/matrix.hpp"

namespace qfid {

/// Resonant rotation by theta about the axis (cos phi, sin phi, 0):
/// exp(-i theta/2 (cos phi sigma_x + sin phi sigma_y)).
struct Pulse {
  double theta = 0.0;
  double phi = 0.0;

  friend bool operator==(const Pulse&, const Pulse&) = default;
};

class PulseSequence {
 public:
  /// Non-empty, all parameters finite.
  explicit PulseSequence(std::vector<Pulse> pulses);

  /// Inverse of params(): (theta_1, phi_1, theta_2, phi_2, ...).
  static PulseSequence from_params(std::span<const double> params);

  std::size_t size() const noexcept { return pulses_.size(); }
  std::span<const Pulse> pulses() const noexcept { return pulses_; }
  const Pulse& operator[](std::size_t i) const noexcept { return pulses_[i]; }
  std::vector<double> params() const;

  friend bool operator==(const PulseSequence&, const PulseSequence&) = default;

 private:
  std::vector<Pulse> pulses_;
};

/// Systematic-error grid: every pulse area is multiplied by a scale, and every
/// pulse is followed by a z rotation exp(-i detuning/2 sigma_z).
struct ErrorGrid {
  std::vector<double> amplitude_scales{1.0};
  std::vector<double> detunings{0.0};

  /// Throws ValidationError on empty lists or non-finite values.
  void validate() const;
  std::size_t points() const noexcept { return amplitude_scales.size() * detunings.size(); }
};

/// Product of the pulse unitaries in application order (first pulse rightmost).
ComplexMatrix sequence_unitary(const PulseSequence& seq, double amplitude_scale = 1.0,
                               double detuning = 0.0);

/// Uniform mean of avg_unitary(target, sequence_unitary(seq, s, d)) over the
/// grid. Lies in [1/3, 1].
double robust_fidelity(const PulseSequence& seq, const ComplexMatrix& target,
                       const ErrorGrid& grid);

struct OptOptions {
  std::uint64_t max_evaluations = 10000;
  /// Stop when max - min objective over the simplex falls below this.
  double tolerance = 1e-10;
  /// Initial simplex edge, radians.
  double initial_step = 0.5;
  std::uint64_t seed = 0;
};

struct OptResult {
  PulseSequence best_params;
  double best_objective = 0.0;
  std::uint64_t evaluations = 0;
  bool converged = false;
  /// Best objective after each simplex iteration; non-decreasing.
  std::vector<double> history;
};

/// Nelder-Mead maximization of robust_fidelity over the 2L pulse parameters,
/// started from seq0. On first convergence the simplex is rebuilt once around
/// the best point with seed-derived perturbations and the search resumed.
/// Running out of evaluations yields converged = false.
OptResult optimize(const PulseSequence& seq0, const ComplexMatrix& target, const ErrorGrid& grid,
                   const OptOptions& options = {});

/// Builds an L-pulse design by continuation: a single pulse started at
/// (pi/2, 0) is optimized, then each further stage appends a zero-area pulse
/// (seed-derived phase) to the previous optimum and re-optimizes, alongside a
/// few seed-derived random starts; the best run is kept. Without
/// detuning errors each stage is at least as good as the one before.
OptResult design_sequence(const ComplexMatrix& target, std::size_t pulses, const ErrorGrid& grid,
                          const OptOptions& options = {});

}  // namespace qfid

#endif  // QFID_PULSE_HPP_
