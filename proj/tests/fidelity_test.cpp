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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qfid/channels.hpp"
#include "qfid/error.hpp"
#include "qfid/fidelity.hpp"
#include "qfid/haar_mc.hpp"
#include "qfid/random.hpp"
#include "test_util.hpp"

namespace qfid {
namespace {

using testing::random_channel;
constexpr double kPi = std::numbers::pi;

McOptions opts(std::uint64_t samples, std::uint64_t seed) {
  McOptions o;
  o.samples = samples;
  o.seed = seed;
  return o;
}

// 3-level unitary rotating levels 1 and 2 into each other by theta.
ComplexMatrix leakage_rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {{1.0, 0.0, 0.0}, {0.0, c, -s}, {0.0, s, c}};
}

// Haar average over states of span{|0>, |1>} inside C^3 of an integrand
// evaluated with the full 3-level vector.
McEstimate subspace_mc(const std::function<double(std::span<const Complex>)>& f,
                       std::uint64_t seed) {
  return mc_state_average(
      2,
      [&f](std::span<const Complex> psi2) {
        const Complex psi3[3] = {psi2[0], psi2[1], 0.0};
        return f(psi3);
      },
      opts(100000, seed));
}

Complex expectation(const ComplexMatrix& m, std::span<const Complex> psi) {
  const std::vector<Complex> mpsi = matvec(m, psi);
  Complex s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) s += std::conj(psi[i]) * mpsi[i];
  return s;
}

// ---------------------------------------------------------------------------
// avg_quadratic_form

TEST(AvgQuadraticFormTest, ClosedFormValues) {
  for (std::size_t n = 1; n <= 6; ++n) {
    EXPECT_NEAR(avg_quadratic_form(ComplexMatrix::identity(n)), 1.0, 1e-15);
  }
  EXPECT_NEAR(avg_quadratic_form(ComplexMatrix::diagonal({1.0, 0.0})), 1.0 / 3.0, 1e-15);
  EXPECT_THROW(avg_quadratic_form(ComplexMatrix::zeros(2, 3)), ShapeError);
}

TEST(AvgQuadraticFormTest, MatchesMonteCarloOnRandomMatrix) {
  SplitMix64 rng(1);
  const ComplexMatrix m = random_gaussian_matrix(4, 4, rng);
  const McEstimate est = mc_quadratic_form_average(m, opts(100000, 1));
  EXPECT_LE(std::abs(est.mean - avg_quadratic_form(m)), 4.0 * est.std_error);
}

TEST(AvgQuadraticFormTest, ConjugationInvariance) {
  SplitMix64 rng(2);
  for (std::size_t n = 2; n <= 8; ++n) {
    const ComplexMatrix m = random_gaussian_matrix(n, n, rng);
    const ComplexMatrix v = random_unitary(n, rng);
    EXPECT_NEAR(avg_quadratic_form(v * m * adjoint(v)), avg_quadratic_form(m), 1e-12);
  }
}

TEST(AvgQuadraticFormTest, HermitianAntiHermitianSplitIsAdditive) {
  SplitMix64 rng(3);
  for (std::size_t n = 2; n <= 8; ++n) {
    const ComplexMatrix m = random_gaussian_matrix(n, n, rng);
    const ComplexMatrix s = Complex(0.5) * (m + adjoint(m));
    const ComplexMatrix a = Complex(0.5) * (m - adjoint(m));
    EXPECT_NEAR(avg_quadratic_form(s + a), avg_quadratic_form(s) + avg_quadratic_form(a), 1e-12);
  }
}

// ---------------------------------------------------------------------------
// avg_unitary / worst_case_unitary

TEST(AvgUnitaryTest, IdenticalGatesGiveUnity) {
  SplitMix64 rng(4);
  for (std::size_t n : {1u, 2u, 3u, 7u}) {
    const ComplexMatrix u = random_unitary(n, rng);
    const FidelityReport r = avg_unitary(u, u);
    EXPECT_NEAR(r.mean_fidelity, 1.0, 1e-12);
    EXPECT_EQ(r.kind, FidelityKind::kUnitary);
    EXPECT_EQ(r.dim, n);
    EXPECT_NEAR(avg_unitary(u, Complex(std::polar(1.0, 0.7)) * u).mean_fidelity, 1.0, 1e-12);
  }
}

TEST(AvgUnitaryTest, PhaseGate) {
  for (double phi : {0.0, 0.3, kPi / 2, 2.0, kPi}) {
    const ComplexMatrix actual = ComplexMatrix::diagonal({1.0, std::polar(1.0, phi)});
    const double f = avg_unitary(ComplexMatrix::identity(2), actual).mean_fidelity;
    EXPECT_NEAR(f, (2.0 + std::cos(phi)) / 3.0, 1e-15) << phi;
  }
  const ComplexMatrix pi_gate = ComplexMatrix::diagonal({1.0, -1.0});
  EXPECT_NEAR(avg_unitary(ComplexMatrix::identity(2), pi_gate).mean_fidelity, 1.0 / 3.0, 1e-15);

  const ComplexMatrix actual = ComplexMatrix::diagonal({1.0, std::polar(1.0, 1.1)});
  const McEstimate est = mc_quadratic_form_average(actual, opts(100000, 5));
  EXPECT_LE(std::abs(est.mean - (2.0 + std::cos(1.1)) / 3.0), 4.0 * est.std_error);
}

TEST(AvgUnitaryTest, BitFlipAgainstIdentity) {
  EXPECT_NEAR(avg_unitary(ComplexMatrix::identity(2), pauli::x()).mean_fidelity, 1.0 / 3.0, 1e-15);
  const McEstimate est = mc_quadratic_form_average(pauli::x(), opts(100000, 6));
  EXPECT_LE(std::abs(est.mean - 1.0 / 3.0), 4.0 * est.std_error);
}

TEST(AvgUnitaryTest, BoundsAndGlobalPhase) {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const ComplexMatrix u0 = random_unitary(n, rng);
    const ComplexMatrix u = random_unitary(n, rng);
    const double f = avg_unitary(u0, u).mean_fidelity;
    EXPECT_GE(f, 1.0 / (n + 1.0) - 1e-15);
    EXPECT_LE(f, 1.0);
    const Complex phase = std::polar(1.0, 0.1 * trial);
    EXPECT_NEAR(avg_unitary(u0, phase * u).mean_fidelity, f, 1e-12);
    EXPECT_NEAR(avg_unitary(phase * u0, u).mean_fidelity, f, 1e-12);
    if (n > 1) EXPECT_LT(f, 1.0 - 1e-6);
  }
}

TEST(AvgUnitaryTest, InputErrors) {
  EXPECT_THROW(avg_unitary(ComplexMatrix::identity(2), ComplexMatrix::identity(3)), ShapeError);
  EXPECT_THROW(avg_unitary(ComplexMatrix::identity(2), ComplexMatrix::diagonal({1.0, 0.9})),
               ValidationError);
  EXPECT_THROW(avg_unitary(ComplexMatrix::diagonal({1.0, 0.9}), ComplexMatrix::identity(2)),
               ValidationError);
}

TEST(WorstCaseTest, IdenticalGates) {
  SplitMix64 rng(8);
  const ComplexMatrix u = random_unitary(4, rng);
  EXPECT_NEAR(worst_case_unitary(u, u), 1.0, 1e-12);
}

TEST(WorstCaseTest, PhaseGateMatchesDenseMinimization) {
  for (double phi : {0.2, kPi / 4, kPi / 2, 2.5, kPi}) {
    const ComplexMatrix actual = ComplexMatrix::diagonal({1.0, std::polar(1.0, phi)});
    const double worst = worst_case_unitary(ComplexMatrix::identity(2), actual);
    const double half = std::cos(phi / 2);
    EXPECT_NEAR(worst, half * half, 1e-12) << phi;
    // Oracle: |<psi|M|psi>|^2 depends only on p = |c0|^2 in [0, 1].
    double dense = 1.0;
    for (int i = 0; i <= 100000; ++i) {
      const double p = i / 100000.0;
      dense = std::min(dense, std::norm(p + (1 - p) * std::polar(1.0, phi)));
    }
    EXPECT_NEAR(worst, dense, 1e-9);
    EXPECT_LE(worst, dense + 1e-15);
  }
}

TEST(WorstCaseTest, OriginInsideHullGivesZero) {
  const ComplexMatrix actual = ComplexMatrix::diagonal(
      {1.0, std::polar(1.0, 2 * kPi / 3), std::polar(1.0, 4 * kPi / 3)});
  EXPECT_EQ(worst_case_unitary(ComplexMatrix::identity(3), actual), 0.0);
}

TEST(WorstCaseTest, NeverExceedsMeanFidelity) {
  SplitMix64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const ComplexMatrix u0 = random_unitary(n, rng);
    // Mix random and near-target gates so that both hull cases appear.
    ComplexMatrix u = random_unitary(n, rng);
    if (trial % 2 == 0) {
      std::vector<Complex> phases(n);
      std::uniform_real_distribution<double> small(-0.5, 0.5);
      for (Complex& z : phases) z = std::polar(1.0, small(rng));
      const ComplexMatrix v = random_unitary(n, rng);
      u = u0 * v * ComplexMatrix::diagonal(phases) * adjoint(v);
    }
    EXPECT_LE(worst_case_unitary(u0, u), avg_unitary(u0, u).mean_fidelity + 1e-12);
  }
  // All eigenphases equal: worst case and mean coincide.
  const ComplexMatrix phase_only = Complex(std::polar(1.0, 1.3)) * ComplexMatrix::identity(3);
  EXPECT_NEAR(worst_case_unitary(ComplexMatrix::identity(3), phase_only),
              avg_unitary(ComplexMatrix::identity(3), phase_only).mean_fidelity, 1e-12);
}

TEST(HullDistanceTest, DegenerateHulls) {
  const Complex one_point[] = {Complex(0.6, 0.8)};
  EXPECT_NEAR(hull_distance_squared(one_point), 1.0, 1e-15);
  const Complex repeated[] = {Complex(0.0, 2.0), Complex(0.0, 2.0), Complex(0.0, 2.0)};
  EXPECT_NEAR(hull_distance_squared(repeated), 4.0, 1e-15);
  const Complex segment[] = {Complex(1.0, 1.0), Complex(-1.0, 1.0)};
  EXPECT_NEAR(hull_distance_squared(segment), 1.0, 1e-15);
  const Complex collinear[] = {Complex(1.0, 1.0), Complex(2.0, 1.0), Complex(3.0, 1.0)};
  EXPECT_NEAR(hull_distance_squared(collinear), 2.0, 1e-15);
  const Complex through_origin[] = {Complex(1.0, 0.0), Complex(-1.0, 0.0)};
  EXPECT_NEAR(hull_distance_squared(through_origin), 0.0, 1e-30);
}

TEST(HullDistanceTest, MatchesBarycentricGridSearch) {
  SplitMix64 rng(10);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 30; ++trial) {
    // Three points on an arc of random width; some hulls contain the origin.
    const double centre = angle(rng);
    const double width = 0.5 + 2.5 * (trial / 30.0);
    const Complex pts[] = {std::polar(1.0, centre - width), std::polar(1.0, centre + 0.3 * width),
                           std::polar(1.0, centre + width)};
    double grid_min = 1.0;
    constexpr int kSteps = 1000;
    for (int i = 0; i <= kSteps; ++i) {
      for (int j = 0; i + j <= kSteps; ++j) {
        const double a = static_cast<double>(i) / kSteps;
        const double b = static_cast<double>(j) / kSteps;
        grid_min = std::min(grid_min, std::norm(a * pts[0] + b * pts[1] + (1 - a - b) * pts[2]));
      }
    }
    const double exact = hull_distance_squared(pts);
    EXPECT_LE(exact, grid_min + 1e-15);
    EXPECT_NEAR(exact, grid_min, 5e-6) << "trial " << trial;
  }
}

// ---------------------------------------------------------------------------
// subspace, acceptance, conditional

TEST(SubspaceSelectorTest, Validation) {
  EXPECT_THROW(SubspaceSelector(3, {}), ValidationError);
  EXPECT_THROW(SubspaceSelector(3, {0, 3}), ValidationError);
  EXPECT_THROW(SubspaceSelector(3, {1, 1}), ValidationError);
  EXPECT_THROW(SubspaceSelector(3, {2, 1}), ValidationError);
  const SubspaceSelector sel(3, {0, 2});
  const ComplexMatrix p = sel.projector();
  EXPECT_EQ(p * p, p);
  EXPECT_EQ(adjoint(p), p);
  EXPECT_EQ(trace(p), Complex(2.0));
}

TEST(AvgSubspaceTest, AuxiliaryPhaseDoesNotCount) {
  const SubspaceSelector sel(3, {0, 1});
  for (double theta : {0.0, 0.4, kPi / 2, 2.0, kPi}) {
    const ComplexMatrix actual = ComplexMatrix::diagonal({1.0, 1.0, std::polar(1.0, theta)});
    const FidelityReport r = avg_subspace(ComplexMatrix::identity(3), actual, sel);
    EXPECT_NEAR(r.mean_fidelity, 1.0, 1e-12) << theta;
    EXPECT_EQ(r.kind, FidelityKind::kSubspace);
    EXPECT_EQ(r.dim, 2u);
  }
  // The full-space average is far lower: (3 + |1 + 1 - 1|^2) / 12.
  const ComplexMatrix pi_phase = ComplexMatrix::diagonal({1.0, 1.0, -1.0});
  EXPECT_NEAR(avg_unitary(ComplexMatrix::identity(3), pi_phase).mean_fidelity, 1.0 / 3.0, 1e-12);
}

TEST(AvgSubspaceTest, LeakageRotation) {
  const SubspaceSelector sel(3, {0, 1});
  for (double theta : {0.1, 0.7, kPi / 3, kPi / 2, 2.2}) {
    const double c = std::cos(theta);
    const double expected = (1.0 + c * c + (1.0 + c) * (1.0 + c)) / 6.0;
    const ComplexMatrix u = leakage_rotation(theta);
    EXPECT_NEAR(avg_subspace(ComplexMatrix::identity(3), u, sel).mean_fidelity, expected, 1e-12);
  }
  const ComplexMatrix u = leakage_rotation(0.9);
  const McEstimate est = subspace_mc(
      [&u](std::span<const Complex> psi) { return std::norm(expectation(u, psi)); }, 11);
  const double c = std::cos(0.9);
  EXPECT_LE(std::abs(est.mean - (1.0 + c * c + (1.0 + c) * (1.0 + c)) / 6.0),
            4.0 * est.std_error);
}

TEST(AcceptanceTest, NoLeakageIsCertain) {
  SplitMix64 rng(12);
  const ComplexMatrix block = random_unitary(2, rng);
  std::vector<Complex> e(9);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) e[i * 3 + j] = block(i, j);
  }
  e[8] = std::polar(1.0, 0.3);
  const ComplexMatrix u(3, 3, std::move(e));
  EXPECT_NEAR(acceptance_probability(u, SubspaceSelector(3, {0, 1})), 1.0, 1e-12);
}

TEST(AcceptanceTest, LeakageRotation) {
  const SubspaceSelector sel(3, {0, 1});
  for (double theta : {0.2, 0.9, 1.3}) {
    const double c2 = std::pow(std::cos(theta), 2);
    const double expected = (1.0 + c2 * c2 + (1.0 + c2) * (1.0 + c2)) / 6.0;
    EXPECT_NEAR(acceptance_probability(leakage_rotation(theta), sel), expected, 1e-12);
  }
  EXPECT_NEAR(acceptance_probability(leakage_rotation(kPi / 2), sel), 1.0 / 3.0, 1e-12);

  // Monte Carlo of |<psi|U^dagger P U|psi>|^2 over subspace states.
  const ComplexMatrix u = leakage_rotation(0.9);
  const ComplexMatrix upu = adjoint(u) * sel.projector() * u;
  const McEstimate est = subspace_mc(
      [&upu](std::span<const Complex> psi) { return std::norm(expectation(upu, psi)); }, 13);
  const double c2 = std::pow(std::cos(0.9), 2);
  EXPECT_LE(std::abs(est.mean - (1.0 + c2 * c2 + (1.0 + c2) * (1.0 + c2)) / 6.0),
            4.0 * est.std_error);
}

TEST(ConditionalTest, NoLeakage) {
  const ComplexMatrix actual = ComplexMatrix::diagonal({1.0, 1.0, std::polar(1.0, 2.0)});
  const FidelityReport r =
      conditional_fidelity(ComplexMatrix::identity(3), actual, SubspaceSelector(3, {0, 1}));
  ASSERT_TRUE(r.conditional && r.acceptance_q);
  EXPECT_NEAR(*r.conditional, 1.0, 1e-12);
  EXPECT_NEAR(*r.acceptance_q, 1.0, 1e-12);
}

TEST(ConditionalTest, LeakageRatio) {
  const SubspaceSelector sel(3, {0, 1});
  for (double theta : {0.3, 1.0, kPi / 2}) {
    const double c = std::cos(theta);
    const double f = (1.0 + c * c + (1.0 + c) * (1.0 + c)) / 6.0;
    const double q = (1.0 + std::pow(c, 4) + std::pow(1.0 + c * c, 2)) / 6.0;
    const FidelityReport r =
        conditional_fidelity(ComplexMatrix::identity(3), leakage_rotation(theta), sel);
    EXPECT_NEAR(r.mean_fidelity, f, 1e-12);
    EXPECT_NEAR(*r.acceptance_q, q, 1e-12);
    EXPECT_NEAR(*r.conditional, f / q, 1e-12);
  }
  const FidelityReport quarter =
      conditional_fidelity(ComplexMatrix::identity(3), leakage_rotation(kPi / 2), sel);
  EXPECT_NEAR(quarter.mean_fidelity, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(*quarter.acceptance_q, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(*quarter.conditional, 1.0, 1e-12);
}

TEST(ConditionalTest, VanishingAcceptanceIsAnError) {
  // Level 0 is swapped out entirely.
  const ComplexMatrix swap{{0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
  EXPECT_THROW(conditional_fidelity(ComplexMatrix::identity(3), swap, SubspaceSelector(3, {0})),
               DegenerateAcceptanceError);
}

TEST(SubspaceTest, SelectorMustMatchDimension) {
  EXPECT_THROW(avg_subspace(ComplexMatrix::identity(3), ComplexMatrix::identity(3),
                            SubspaceSelector(4, {0, 1})),
               ShapeError);
  EXPECT_THROW(acceptance_probability(ComplexMatrix::identity(2), SubspaceSelector(3, {0})),
               ShapeError);
}

TEST(SubspaceTest, OutputsWithinUnitInterval) {
  SplitMix64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const ComplexMatrix u0 = random_unitary(n, rng);
    const ComplexMatrix u = random_unitary(n, rng);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; i += 2) idx.push_back(i);
    const SubspaceSelector sel(n, idx);
    const double f = avg_subspace(u0, u, sel).mean_fidelity;
    const double q = acceptance_probability(u, sel);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
    EXPECT_GE(q, 0.0);
    EXPECT_LE(q, 1.0);
  }
}

// ---------------------------------------------------------------------------
// avg_kraus

TEST(AvgKrausTest, Depolarizing) {
  for (double p : {0.0, 0.3, 0.7, 1.0}) {
    const FidelityReport r = avg_kraus(ComplexMatrix::identity(2), depolarizing_channel(p));
    EXPECT_NEAR(r.mean_fidelity, (1.0 + p) / 2.0, 1e-12) << p;
    EXPECT_EQ(r.kind, FidelityKind::kKraus);
  }
}

TEST(AvgKrausTest, AmplitudeDamping) {
  for (double gt : {0.0, 0.5, 2.0}) {
    const double expected = (3.0 + std::exp(-gt) + 2.0 * std::exp(-gt / 2)) / 6.0;
    EXPECT_NEAR(avg_kraus(ComplexMatrix::identity(2), amplitude_damping_channel(gt)).mean_fidelity,
                expected, 1e-12)
        << gt;
  }
}

TEST(AvgKrausTest, SingleOperatorReducesToUnitary) {
  SplitMix64 rng(15);
  const ComplexMatrix u = random_unitary(3, rng);
  const ComplexMatrix v = random_unitary(3, rng);
  EXPECT_NEAR(avg_kraus(u, unitary_channel(u)).mean_fidelity, 1.0, 1e-12);
  EXPECT_NEAR(avg_kraus(u, unitary_channel(v)).mean_fidelity, avg_unitary(u, v).mean_fidelity,
              1e-14);
}

TEST(AvgKrausTest, InvariantUnderRemixing) {
  SplitMix64 rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const std::size_t m = 1 + trial % 4;
    const KrausChannel ch = random_channel(n, m, rng);
    const ComplexMatrix target = random_unitary(n, rng);
    const double f = avg_kraus(target, ch).mean_fidelity;
    EXPECT_NEAR(avg_kraus(target, remix(ch, random_unitary(m, rng))).mean_fidelity, f, 1e-12);
    EXPECT_NEAR(avg_kraus(target, remix(pad(ch, m + 2), random_unitary(m + 2, rng))).mean_fidelity,
                f, 1e-12);
    EXPECT_GE(f, 1.0 / (n + 1.0) - 1e-15);
    EXPECT_LE(f, 1.0);
  }
}

TEST(AvgKrausTest, InputErrors) {
  EXPECT_THROW(avg_kraus(ComplexMatrix::identity(3), depolarizing_channel(0.1)), ShapeError);
  EXPECT_THROW(avg_kraus(ComplexMatrix::diagonal({1.0, 0.5}), depolarizing_channel(0.1)),
               ValidationError);
}

// ---------------------------------------------------------------------------
// composite register

TEST(CompositeFidelityTest, Limits) {
  for (std::size_t n : {2u, 3u, 5u}) {
    for (std::size_t k : {1u, 2u, 5u, 20u, 60u, 400u}) {
      EXPECT_EQ(composite_fidelity(n, k, 1.0), 1.0);
      const double floor = composite_fidelity(n, k, 1.0 / (n + 1.0));
      EXPECT_NEAR(floor, 1.0 / (std::pow(static_cast<double>(n), static_cast<double>(k)) + 1.0),
                  1e-13 * floor + 1e-300);
    }
  }
}

TEST(CompositeFidelityTest, TwoQubitsAtPointNine) {
  EXPECT_NEAR(composite_fidelity(2, 2, 0.9), (1.0 + 1.7 * 1.7) / 5.0, 1e-15);
  EXPECT_NEAR(composite_fidelity(2, 2, 0.9), 0.778, 1e-12);
  // Same number from a channel with single-qubit fidelity 0.9: (1 + p) / 2 = 0.9.
  const KrausChannel two = tensor_power(depolarizing_channel(0.8), 2);
  EXPECT_NEAR(avg_kraus(ComplexMatrix::identity(4), two).mean_fidelity, 0.778, 1e-12);
}

TEST(CompositeFidelityTest, AgreesWithExtendedPrecisionAcrossRegimes) {
  for (std::size_t n : {2u, 3u}) {
    for (double f : {0.4, 0.75, 0.9, 0.999}) {
      if (f < 1.0 / (n + 1.0)) continue;
      for (std::size_t k = 1; k <= 120; ++k) {
        const long double nk = std::pow(static_cast<long double>(n), static_cast<long double>(k));
        const long double x = (n + 1.0L) * f - 1.0L;
        const long double ref = (1.0L + std::pow(x, static_cast<long double>(k))) / (nk + 1.0L);
        const double got = composite_fidelity(n, k, f);
        EXPECT_NEAR(got, static_cast<double>(ref), 1e-13 * static_cast<double>(ref) + 1e-300)
            << "n=" << n << " K=" << k << " f=" << f;
      }
    }
  }
}

TEST(CompositeFidelityTest, HugeRegistersStayFinite) {
  const double f = composite_fidelity(2, 1000000, 0.9999999);
  EXPECT_TRUE(std::isfinite(f));
  EXPECT_GT(f, 0.0);
  EXPECT_LT(f, 1.0);
  EXPECT_EQ(composite_fidelity(10, 5000, 0.5), 0.0);
}

TEST(CompositeFidelityTest, ManyQubitAsymptotics) {
  const double f1 = 1.0 - 1e-3;
  const double f = composite_fidelity(2, 100, f1);
  EXPECT_LE(std::abs(f - std::pow(f1, 150.0)) / f, 2e-3);
}

TEST(CompositeFidelityTest, RangeChecks) {
  EXPECT_EQ(composite_fidelity(2, 3, 1.0 + 5e-13), 1.0);
  EXPECT_THROW(composite_fidelity(2, 3, 1.0 + 1e-9), ValidationError);
  EXPECT_THROW(composite_fidelity(2, 3, 0.3), ValidationError);
  EXPECT_THROW(composite_fidelity(2, 3, std::nan("")), ValidationError);
  EXPECT_THROW(composite_fidelity(1, 3, 0.9), ValidationError);
  EXPECT_THROW(composite_fidelity(2, 0, 0.9), ValidationError);
}

TEST(CompositeCheckTest, DepolarizingTwoQubits) {
  const CompositeCheck c = composite_bruteforce_check(depolarizing_channel(0.7), 2);
  EXPECT_NEAR(c.bruteforce, 0.6805, 1e-12);
  EXPECT_NEAR(c.closed_form, 0.6805, 1e-12);
}

TEST(CompositeCheckTest, UnitaryChannelThreeQubits) {
  SplitMix64 rng(17);
  const CompositeCheck c = composite_bruteforce_check(unitary_channel(random_unitary(2, rng)), 3);
  // Target is the identity, so the single-qubit fidelity is below one; the
  // identity channel itself must give exactly one.
  EXPECT_NEAR(c.bruteforce, c.closed_form, 1e-10);
  const CompositeCheck id = composite_bruteforce_check(unitary_channel(ComplexMatrix::identity(2)), 3);
  EXPECT_NEAR(id.bruteforce, 1.0, 1e-12);
  EXPECT_NEAR(id.closed_form, 1.0, 1e-12);
}

TEST(CompositeCheckTest, AgreementForTwoAndThreeQubits) {
  SplitMix64 rng(18);
  const KrausChannel channels[] = {depolarizing_channel(0.7), amplitude_damping_channel(0.5),
                                   random_channel(2, 3, rng)};
  for (const KrausChannel& ch : channels) {
    for (std::size_t k : {2u, 3u}) {
      const CompositeCheck c = composite_bruteforce_check(ch, k);
      EXPECT_NEAR(c.bruteforce, c.closed_form, 1e-10) << "K=" << k;
    }
  }
  EXPECT_THROW(composite_bruteforce_check(depolarizing_channel(0.7), 7), BudgetError);
}

}  // namespace
}  // namespace qfid
