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

#include "qfid/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfid/error.hpp"
#include "qfid/fidelity.hpp"
#include "qfid/random.hpp"

namespace qfid {

namespace {

ComplexMatrix pulse_unitary(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  // -i s (cos phi sigma_x + sin phi sigma_y) has off-diagonals -i s e^{-i phi}, -i s e^{i phi}.
  const Complex minus_i(0.0, -1.0);
  return {{c, minus_i * s * std::polar(1.0, -phi)}, {minus_i * s * std::polar(1.0, phi), c}};
}

ComplexMatrix detuning_unitary(double detuning) {
  return ComplexMatrix::diagonal({std::polar(1.0, -detuning / 2.0), std::polar(1.0, detuning / 2.0)});
}

struct Vertex {
  std::vector<double> x;
  double value;  // objective, maximized
};

class NelderMead {
 public:
  NelderMead(const ComplexMatrix& target, const ErrorGrid& grid, const OptOptions& options)
      : target_(target), grid_(grid), options_(options) {}

  OptResult run(const PulseSequence& seq0) {
    std::vector<double> x0 = seq0.params();
    best_ = {x0, evaluate(x0)};
    SplitMix64 rng(options_.seed);

    bool converged = false;
    for (int attempt = 0; attempt < 2 && !exhausted(); ++attempt) {
      std::vector<double> step(x0.size(), options_.initial_step);
      if (attempt > 0) {
        std::uniform_real_distribution<double> jitter(0.5, 1.5);
        for (double& s : step) s *= jitter(rng);
      }
      converged = search(best_.x, step);
    }

    OptResult result{PulseSequence::from_params(best_.x), best_.value, evaluations_,
                     converged && !stopped_by_budget_, std::move(history_)};
    return result;
  }

 private:
  bool exhausted() const { return evaluations_ >= options_.max_evaluations; }

  double evaluate(const std::vector<double>& x) {
    ++evaluations_;
    const double f = robust_fidelity(PulseSequence::from_params(x), target_, grid_);
    if (f > best_.value) best_ = {x, f};
    return f;
  }

  // Returns true when the objective spread fell below tolerance.
  bool search(const std::vector<double>& start, const std::vector<double>& step) {
    const std::size_t dim = start.size();
    std::vector<Vertex> simplex;
    simplex.push_back({start, best_.value});
    for (std::size_t i = 0; i < dim && !exhausted(); ++i) {
      std::vector<double> x = start;
      x[i] += step[i];
      simplex.push_back({x, evaluate(x)});
    }
    if (simplex.size() != dim + 1) {
      stopped_by_budget_ = true;
      return false;
    }

    constexpr double kReflect = 1.0;
    constexpr double kExpand = 2.0;
    constexpr double kContract = 0.5;
    constexpr double kShrink = 0.5;

    while (true) {
      // Descending by objective: simplex[0] best, simplex[dim] worst.
      std::stable_sort(simplex.begin(), simplex.end(),
                       [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
      history_.push_back(best_.value);
      if (simplex.front().value - simplex.back().value <= options_.tolerance) return true;
      if (exhausted()) {
        stopped_by_budget_ = true;
        return false;
      }

      std::vector<double> centroid(dim, 0.0);
      for (std::size_t v = 0; v < dim; ++v) {
        for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(dim);
      }
      auto along = [&](double t) {
        std::vector<double> x(dim);
        for (std::size_t i = 0; i < dim; ++i) {
          x[i] = centroid[i] + t * (simplex[dim].x[i] - centroid[i]);
        }
        return x;
      };

      Vertex reflected{along(-kReflect), 0.0};
      reflected.value = evaluate(reflected.x);
      if (reflected.value > simplex[0].value) {
        if (exhausted()) {
          simplex[dim] = std::move(reflected);
          continue;
        }
        Vertex expanded{along(-kExpand), 0.0};
        expanded.value = evaluate(expanded.x);
        simplex[dim] = expanded.value > reflected.value ? std::move(expanded) : std::move(reflected);
        continue;
      }
      if (reflected.value > simplex[dim - 1].value) {
        simplex[dim] = std::move(reflected);
        continue;
      }
      if (exhausted()) continue;

      const bool outside = reflected.value > simplex[dim].value;
      Vertex contracted{along(outside ? -kContract : kContract), 0.0};
      contracted.value = evaluate(contracted.x);
      if (outside ? contracted.value >= reflected.value
                  : contracted.value > simplex[dim].value) {
        simplex[dim] = std::move(contracted);
        continue;
      }

      for (std::size_t v = 1; v <= dim && !exhausted(); ++v) {
        for (std::size_t i = 0; i < dim; ++i) {
          simplex[v].x[i] = simplex[0].x[i] + kShrink * (simplex[v].x[i] - simplex[0].x[i]);
        }
        simplex[v].value = evaluate(simplex[v].x);
      }
    }
  }

  const ComplexMatrix& target_;
  const ErrorGrid& grid_;
  const OptOptions& options_;
  Vertex best_{};
  std::uint64_t evaluations_ = 0;
  bool stopped_by_budget_ = false;
  std::vector<double> history_;
};

}  // namespace

PulseSequence::PulseSequence(std::vector<Pulse> pulses) : pulses_(std::move(pulses)) {
  if (pulses_.empty()) throw ValidationError("pulse sequence must contain at least one pulse");
  for (const Pulse& p : pulses_) {
    if (!std::isfinite(p.theta) || !std::isfinite(p.phi)) {
      throw ValidationError("pulse sequence has a non-finite parameter");
    }
  }
}

PulseSequence PulseSequence::from_params(std::span<const double> params) {
  if (params.size() % 2 != 0) {
    throw ValidationError("pulse parameter vector must have even length");
  }
  std::vector<Pulse> pulses;
  pulses.reserve(params.size() / 2);
  for (std::size_t i = 0; i < params.size(); i += 2) pulses.push_back({params[i], params[i + 1]});
  return PulseSequence(std::move(pulses));
}

std::vector<double> PulseSequence::params() const {
  std::vector<double> out;
  out.reserve(2 * pulses_.size());
  for (const Pulse& p : pulses_) {
    out.push_back(p.theta);
    out.push_back(p.phi);
  }
  return out;
}

void ErrorGrid::validate() const {
  if (amplitude_scales.empty() || detunings.empty()) {
    throw ValidationError("error grid needs at least one amplitude scale and one detuning");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(amplitude_scales.begin(), amplitude_scales.end(), finite) ||
      !std::all_of(detunings.begin(), detunings.end(), finite)) {
    throw ValidationError("error grid has a non-finite value");
  }
}

ComplexMatrix sequence_unitary(const PulseSequence& seq, double amplitude_scale, double detuning) {
  const ComplexMatrix z = detuning_unitary(detuning);
  ComplexMatrix u = ComplexMatrix::identity(2);
  for (const Pulse& p : seq.pulses()) {
    u = z * pulse_unitary(p.theta * amplitude_scale, p.phi) * u;
  }
  return u;
}

double robust_fidelity(const PulseSequence& seq, const ComplexMatrix& target,
                       const ErrorGrid& grid) {
  grid.validate();
  if (target.rows() != 2 || target.cols() != 2) {
    throw ShapeError("robust_fidelity: target must be 2x2, got " + target.shape());
  }
  double sum = 0.0;
  for (double scale : grid.amplitude_scales) {
    for (double detuning : grid.detunings) {
      sum += avg_unitary(target, sequence_unitary(seq, scale, detuning)).mean_fidelity;
    }
  }
  return sum / static_cast<double>(grid.points());
}

OptResult optimize(const PulseSequence& seq0, const ComplexMatrix& target, const ErrorGrid& grid,
                   const OptOptions& options) {
  grid.validate();
  if (options.max_evaluations < 1) {
    throw ValidationError("optimize: max_evaluations must be at least 1");
  }
  if (!(options.tolerance >= 0.0) || !(options.initial_step > 0.0)) {
    throw ValidationError("optimize: tolerance must be >= 0 and initial_step > 0");
  }
  // Validates the target once up front.
  robust_fidelity(seq0, target, grid);
  return NelderMead(target, grid, options).run(seq0);
}

constexpr std::size_t kRandomStartsPerStage = 8;

OptResult design_sequence(const ComplexMatrix& target, std::size_t pulses, const ErrorGrid& grid,
                          const OptOptions& options) {
  if (pulses == 0) throw ValidationError("design_sequence: need at least one pulse");
  SplitMix64 rng(options.seed);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);

  OptOptions stage_options = options;
  OptResult result = optimize(PulseSequence({{std::numbers::pi / 2.0, 0.0}}), target, grid,
                              stage_options);
  std::uint64_t evaluations = result.evaluations;
  std::vector<double> history = result.history;
  std::uniform_real_distribution<double> area(0.0, 2.0 * std::numbers::pi);
  for (std::size_t l = 2; l <= pulses; ++l) {
    stage_options.seed = options.seed + l - 1;
    // Continuation start first: appending a zero-area pulse keeps the previous
    // optimum, so the stage can only improve on it.
    std::vector<Pulse> seed_pulses(result.best_params.pulses().begin(),
                                   result.best_params.pulses().end());
    seed_pulses.push_back({0.0, phase(rng)});
    OptResult best = optimize(PulseSequence(std::move(seed_pulses)), target, grid, stage_options);
    evaluations += best.evaluations;
    history.insert(history.end(), best.history.begin(), best.history.end());
    // The appended pulse often sits on a saddle; a few seeded random starts
    // reach the genuinely composite basins.
    for (std::size_t s = 0; s < kRandomStartsPerStage; ++s) {
      std::vector<Pulse> start(l);
      for (Pulse& p : start) p = {area(rng), phase(rng)};
      OptResult stage = optimize(PulseSequence(std::move(start)), target, grid, stage_options);
      evaluations += stage.evaluations;
      if (stage.best_objective > best.best_objective) {
        best = std::move(stage);
        history.push_back(best.best_objective);
      }
    }
    result = std::move(best);
  }
  result.evaluations = evaluations;
  result.history = std::move(history);
  return result;
}

}  // namespace qfid
