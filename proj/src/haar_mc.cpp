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

#include "qfid/haar_mc.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "qfid/channels.hpp"
#include "qfid/error.hpp"

namespace qfid {

namespace {

// Fixed partition of the sample index range; independent of worker count.
constexpr std::uint64_t kBlockSize = 1024;

void fill_haar(SplitMix64& rng, std::span<Complex> out) {
  std::normal_distribution<double> normal;
  double norm2 = 0.0;
  for (Complex& c : out) {
    const double re = normal(rng);
    const double im = normal(rng);
    c = {re, im};
    norm2 += re * re + im * im;
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& c : out) c *= scale;
}

struct BlockStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations
  double min = std::numeric_limits<double>::infinity();
};

unsigned resolve_workers(unsigned requested, std::uint64_t blocks) {
  unsigned w = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(w, std::max<std::uint64_t>(blocks, 1)));
}

std::vector<BlockStats> run_blocks(std::size_t n, const StateIntegrand& integrand,
                                   const McOptions& options) {
  const std::uint64_t blocks = (options.samples + kBlockSize - 1) / kBlockSize;
  std::vector<BlockStats> stats(blocks);
  const unsigned workers = resolve_workers(options.workers, blocks);

  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](unsigned worker) {
    try {
      std::vector<Complex> psi(n);
      for (std::uint64_t b = worker; b < blocks; b += workers) {
        BlockStats& s = stats[b];
        const std::uint64_t end = std::min(options.samples, (b + 1) * kBlockSize);
        for (std::uint64_t i = b * kBlockSize; i < end; ++i) {
          SplitMix64 rng = SplitMix64::stream(options.seed, i);
          fill_haar(rng, psi);
          const double x = integrand(psi);
          ++s.count;
          const double delta = x - s.mean;
          s.mean += delta / static_cast<double>(s.count);
          s.m2 += delta * (x - s.mean);
          s.min = std::min(s.min, x);
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  if (failure) std::rethrow_exception(failure);
  return stats;
}

void validate_options(std::size_t n, const McOptions& options) {
  if (n == 0) throw ValidationError("Monte Carlo: dimension must be positive");
  if (options.samples < 2) {
    throw ValidationError("Monte Carlo: need at least 2 samples, got " +
                          std::to_string(options.samples));
  }
}

}  // namespace

PureState::PureState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw ValidationError("pure state must have dimension >= 1");
  double norm2 = 0.0;
  for (const Complex& c : amplitudes_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ValidationError("pure state has a non-finite amplitude");
    }
    norm2 += std::norm(c);
  }
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw ValidationError("pure state is not normalized (norm^2 = " + std::to_string(norm2) + ")");
  }
}

PureState sample_haar_state(std::size_t n, SplitMix64& rng) {
  if (n == 0) throw ValidationError("sample_haar_state: dimension must be >= 1");
  std::vector<Complex> amps(n);
  fill_haar(rng, amps);
  return PureState(std::move(amps));
}

PureState haar_state_at(std::size_t n, std::uint64_t seed, std::uint64_t index) {
  SplitMix64 rng = SplitMix64::stream(seed, index);
  return sample_haar_state(n, rng);
}

McEstimate mc_state_average(std::size_t n, const StateIntegrand& integrand,
                            const McOptions& options) {
  validate_options(n, options);
  const std::vector<BlockStats> stats = run_blocks(n, integrand, options);

  // Chan et al. pairwise merge, always in block order.
  BlockStats total;
  for (const BlockStats& s : stats) {
    if (s.count == 0) continue;
    const double na = static_cast<double>(total.count);
    const double nb = static_cast<double>(s.count);
    const double delta = s.mean - total.mean;
    total.count += s.count;
    const double nt = static_cast<double>(total.count);
    total.mean += delta * nb / nt;
    total.m2 += s.m2 + delta * delta * na * nb / nt;
  }
  const double count = static_cast<double>(total.count);
  const double variance = std::max(0.0, total.m2 / (count - 1.0));
  return McEstimate{total.mean, std::sqrt(variance / count), options.samples, options.seed};
}

double mc_state_minimum(std::size_t n, const StateIntegrand& integrand,
                        const McOptions& options) {
  validate_options(n, options);
  double best = std::numeric_limits<double>::infinity();
  for (const BlockStats& s : run_blocks(n, integrand, options)) best = std::min(best, s.min);
  return best;
}

McEstimate mc_quadratic_form_average(const ComplexMatrix& m, const McOptions& options) {
  if (!m.square()) {
    throw ShapeError("mc_quadratic_form_average: matrix must be square, got " + m.shape());
  }
  const std::size_t n = m.rows();
  auto integrand = [&m, n](std::span<const Complex> psi) {
    Complex amp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += m(i, j) * psi[j];
      amp += std::conj(psi[i]) * row;
    }
    return std::norm(amp);
  };
  return mc_state_average(n, integrand, options);
}

McEstimate mc_channel_fidelity(const ComplexMatrix& target, const KrausChannel& channel,
                               const McOptions& options) {
  if (!target.square() || target.rows() != channel.dim()) {
    throw ShapeError("mc_channel_fidelity: target " + target.shape() +
                     " does not match channel dimension " + std::to_string(channel.dim()));
  }
  if (!is_unitary(target)) throw ValidationError("mc_channel_fidelity: target is not unitary");
  const ComplexMatrix target_dag = adjoint(target);
  std::vector<ComplexMatrix> ops;
  ops.reserve(channel.size());
  for (const ComplexMatrix& g : channel.kraus()) ops.push_back(target_dag * g);

  const std::size_t n = channel.dim();
  auto integrand = [&ops, n](std::span<const Complex> psi) {
    double total = 0.0;
    for (const ComplexMatrix& m : ops) {
      Complex amp = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        Complex row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += m(i, j) * psi[j];
        amp += std::conj(psi[i]) * row;
      }
      total += std::norm(amp);
    }
    return total;
  };
  return mc_state_average(n, integrand, options);
}

}  // namespace qfid
