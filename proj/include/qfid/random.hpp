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

#ifndef QFID_RANDOM_HPP_
#define QFID_RANDOM_HPP_

#include <cstdint>
#include <limits>
#include <random>

#include "qfid/matrix.hpp"

namespace qfid {

/// SplitMix64. Small-state 64-bit generator satisfying
/// UniformRandomBitGenerator; cheap enough to instantiate once per sample.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Independent stream for item `index` of the run keyed by `seed`. Depends
  /// only on (seed, index), which makes parallel chunking reproducible.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
    SplitMix64 key(seed);
    const std::uint64_t base = key();
    SplitMix64 mixer(base ^ (index * 0xD1B54A32D192ED03ULL));
    return SplitMix64(mixer());
  }

 private:
  std::uint64_t state_;
};

/// Matrix with i.i.d. standard complex Gaussian entries (real and imaginary
/// parts each N(0, 1/2)).
ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, SplitMix64& rng);

/// Haar-distributed unitary: Gram-Schmidt on a Gaussian matrix, which yields
/// the QR factor with a positive real diagonal in R.
ComplexMatrix random_unitary(std::size_t n, SplitMix64& rng);

ComplexMatrix random_hermitian(std::size_t n, SplitMix64& rng);
ComplexMatrix random_antihermitian(std::size_t n, SplitMix64& rng);

/// Random full-rank density matrix G G^dagger / Tr(G G^dagger).
ComplexMatrix random_density_matrix(std::size_t n, SplitMix64& rng);

}  // namespace qfid

#endif  // QFID_RANDOM_HPP_
