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

#ifndef QFID_FIDELITY_HPP_
#define QFID_FIDELITY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qfid/channels.hpp"
#include "qfid/haar_mc.hpp"
#include "qfid/matrix.hpp"

namespace qfid {

/// Relevant subspace spanned by a set of computational-basis states. Rotated
/// subspaces are handled by conjugating the unitaries beforehand.
class SubspaceSelector {
 public:
  /// `indices` must be non-empty, strictly increasing and below ambient_dim.
  SubspaceSelector(std::size_t ambient_dim, std::vector<std::size_t> indices);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::span<const std::size_t> indices() const noexcept { return indices_; }

  /// Orthogonal projector P onto the subspace, ambient_dim x ambient_dim.
  ComplexMatrix projector() const;

 private:
  std::size_t ambient_dim_;
  std::vector<std::size_t> indices_;
};

enum class FidelityKind { kUnitary, kSubspace, kKraus, kComposite };

std::string_view to_string(FidelityKind kind);

struct FidelityReport {
  double mean_fidelity = 0.0;
  FidelityKind kind = FidelityKind::kUnitary;
  /// Dimension the average runs over (n, or n_rel for subspace reports).
  std::size_t dim = 0;
  std::optional<double> worst_case;
  std::optional<double> acceptance_q;
  std::optional<double> conditional;
  std::optional<McEstimate> mc_crosscheck;
};

/// Haar average of |<psi|M|psi>|^2 over unit vectors of C^n:
///   [Tr(M M^dagger) + |Tr M|^2] / (n (n + 1)).
double avg_quadratic_form(const ComplexMatrix& m);

/// Average gate fidelity of `actual` against `target`, with M = target^dagger actual:
///   F = (n + |Tr M|^2) / (n (n + 1)),  1/(n+1) <= F <= 1.
FidelityReport avg_unitary(const ComplexMatrix& target, const ComplexMatrix& actual);

/// Minimum over pure states of |<psi|M|psi>|^2 for M = target^dagger actual.
///
/// M is normal, so <psi|M|psi> sweeps the convex hull of its eigenvalues
/// exp(i phi_j); the result is the squared distance from the origin to that
/// hull, and exactly 0 when the origin lies strictly inside it.
double worst_case_unitary(const ComplexMatrix& target, const ComplexMatrix& actual);

/// Squared Euclidean distance from the origin to the convex hull of planar
/// points given as complex numbers. Exposed for testing.
double hull_distance_squared(std::span<const Complex> points);

/// Fidelity averaged over input states of the relevant subspace only, using
/// the n_rel x n_rel block M_rel of target^dagger actual. M_rel need not be
/// unitary when population leaks out, so F may drop below 1/(n_rel+1).
FidelityReport avg_subspace(const ComplexMatrix& target, const ComplexMatrix& actual,
                            const SubspaceSelector& sel);

/// Average acceptance probability Q of a measurement confirming the output
/// is back in the subspace: the same quadratic-form average applied to
/// M_rel = P U^dagger P U P restricted to the subspace.
double acceptance_probability(const ComplexMatrix& actual, const SubspaceSelector& sel);

inline constexpr double kDegenerateAcceptance = 1e-12;

/// Subspace report extended with Q and F_c = F / Q. Throws
/// DegenerateAcceptanceError when Q <= kDegenerateAcceptance.
FidelityReport conditional_fidelity(const ComplexMatrix& target, const ComplexMatrix& actual,
                                    const SubspaceSelector& sel);

/// Average fidelity of a Kraus channel against a target unitary:
///   F = [n + sum_k |Tr(target^dagger G_k)|^2] / (n (n + 1)).
/// Invariant under any unitary remixing of the Kraus set.
FidelityReport avg_kraus(const ComplexMatrix& target, const KrausChannel& channel);

/// Fidelity on a K-qudit register when every qudit undergoes the same map with
/// single-qudit fidelity f_single:
///   F = (1 + ((n+1) f_single - 1)^K) / (n^K + 1).
/// f_single must lie in [1/(n+1), 1]; values up to 1 + 1e-12 are clamped to 1.
double composite_fidelity(std::size_t n, std::size_t k, double f_single);

struct CompositeCheck {
  double bruteforce = 0.0;   // avg_kraus(I, tensor_power(channel, K))
  double closed_form = 0.0;  // composite_fidelity(n, K, avg_kraus(I, channel))
};

CompositeCheck composite_bruteforce_check(const KrausChannel& channel, std::size_t k,
                                          const TensorPowerBudget& budget = {});

}  // namespace qfid

#endif  // QFID_FIDELITY_HPP_
