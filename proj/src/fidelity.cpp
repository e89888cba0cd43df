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

#include "qfid/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <sstream>

#include "qfid/error.hpp"

namespace qfid {

namespace {

void require_unitary_pair(const ComplexMatrix& target, const ComplexMatrix& actual,
                          const char* what) {
  if (!target.square() || !actual.square() || target.rows() != actual.rows()) {
    throw ShapeError(std::string(what) + ": target " + target.shape() + " and actual " +
                     actual.shape() + " must be square of equal size");
  }
  if (!is_unitary(target)) throw ValidationError(std::string(what) + ": target is not unitary");
  if (!is_unitary(actual)) throw ValidationError(std::string(what) + ": actual is not unitary");
}

void require_selector_fits(const SubspaceSelector& sel, const ComplexMatrix& u, const char* what) {
  if (sel.ambient_dim() != u.rows()) {
    throw ShapeError(std::string(what) + ": selector ambient dimension " +
                     std::to_string(sel.ambient_dim()) + " does not match operator " + u.shape());
  }
}

// Tr(A^dagger B) without forming the product.
Complex overlap_trace(const ComplexMatrix& a, const ComplexMatrix& b) {
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    t += std::conj(a.entries()[i]) * b.entries()[i];
  }
  return t;
}

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

// Andrew's monotone chain; counter-clockwise, no repeated endpoint.
std::vector<Complex> convex_hull(std::vector<Complex> pts) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Complex> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Complex& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Complex& p = pts[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

SubspaceSelector::SubspaceSelector(std::size_t ambient_dim, std::vector<std::size_t> indices)
    : ambient_dim_(ambient_dim), indices_(std::move(indices)) {
  if (indices_.empty()) throw ValidationError("subspace selector: no basis indices given");
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] >= ambient_dim_) {
      throw ValidationError("subspace selector: index " + std::to_string(indices_[i]) +
                            " is outside [0, " + std::to_string(ambient_dim_) + ")");
    }
    if (i > 0 && indices_[i] <= indices_[i - 1]) {
      throw ValidationError("subspace selector: indices must be strictly increasing");
    }
  }
}

ComplexMatrix SubspaceSelector::projector() const {
  std::vector<Complex> diag(ambient_dim_);
  for (std::size_t i : indices_) diag[i] = 1.0;
  return ComplexMatrix::diagonal(diag);
}

std::string_view to_string(FidelityKind kind) {
  switch (kind) {
    case FidelityKind::kUnitary:
      return "unitary";
    case FidelityKind::kSubspace:
      return "subspace";
    case FidelityKind::kKraus:
      return "kraus";
    case FidelityKind::kComposite:
      return "composite";
  }
  return "unknown";
}

double avg_quadratic_form(const ComplexMatrix& m) {
  if (!m.square()) throw ShapeError("avg_quadratic_form: matrix must be square, got " + m.shape());
  const auto n = static_cast<double>(m.rows());
  const Complex gram = trace(m * adjoint(m));
  if (std::abs(gram.imag()) > 1e-12 * std::max(1.0, std::abs(gram.real()))) {
    std::ostringstream msg;
    msg << "avg_quadratic_form: Tr(M M^dagger) has imaginary part " << gram.imag();
    throw ConvergenceError(msg.str());
  }
  return (gram.real() + std::norm(trace(m))) / (n * (n + 1.0));
}

FidelityReport avg_unitary(const ComplexMatrix& target, const ComplexMatrix& actual) {
  require_unitary_pair(target, actual, "avg_unitary");
  const std::size_t n = target.rows();
  const double nd = static_cast<double>(n);
  // Tr(M M^dagger) = n exactly for unitary M.
  const double f = (nd + std::norm(overlap_trace(target, actual))) / (nd * (nd + 1.0));
  FidelityReport report;
  report.kind = FidelityKind::kUnitary;
  report.dim = n;
  report.mean_fidelity = std::min(f, 1.0);
  return report;
}

double hull_distance_squared(std::span<const Complex> points) {
  if (points.empty()) throw ValidationError("hull_distance_squared: no points");
  const std::vector<Complex> hull = convex_hull({points.begin(), points.end()});
  const Complex origin = 0.0;
  if (hull.size() == 1) return std::norm(hull.front());
  if (hull.size() == 2) {
    const double d = point_segment_distance(origin, hull[0], hull[1]);
    return d * d;
  }
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Complex a = hull[i];
    const Complex b = hull[(i + 1) % hull.size()];
    // Signed distance of the origin from the edge line, positive on the inner side.
    const double signed_dist = cross(b - a, origin - a) / std::abs(b - a);
    if (!(signed_dist > 1e-12)) inside = false;
    best = std::min(best, point_segment_distance(origin, a, b));
  }
  if (inside) return 0.0;
  return best * best;
}

double worst_case_unitary(const ComplexMatrix& target, const ComplexMatrix& actual) {
  require_unitary_pair(target, actual, "worst_case_unitary");
  const EigenphaseSet phases = unitary_eigenphases(adjoint(target) * actual);
  std::vector<Complex> points;
  points.reserve(phases.phases.size());
  for (double phi : phases.phases) points.push_back(std::polar(1.0, phi));
  return std::min(hull_distance_squared(points), 1.0);
}

FidelityReport avg_subspace(const ComplexMatrix& target, const ComplexMatrix& actual,
                            const SubspaceSelector& sel) {
  require_unitary_pair(target, actual, "avg_subspace");
  require_selector_fits(sel, target, "avg_subspace");
  const ComplexMatrix m_rel = principal_submatrix(adjoint(target) * actual, sel.indices());
  FidelityReport report;
  report.kind = FidelityKind::kSubspace;
  report.dim = sel.size();
  report.mean_fidelity = std::clamp(avg_quadratic_form(m_rel), 0.0, 1.0);
  return report;
}

double acceptance_probability(const ComplexMatrix& actual, const SubspaceSelector& sel) {
  if (!actual.square()) {
    throw ShapeError("acceptance_probability: operator must be square, got " + actual.shape());
  }
  if (!is_unitary(actual)) throw ValidationError("acceptance_probability: actual is not unitary");
  require_selector_fits(sel, actual, "acceptance_probability");
  // P U^dagger P U P on the subspace is B^dagger B with B the block of U.
  const ComplexMatrix block = principal_submatrix(actual, sel.indices());
  return std::clamp(avg_quadratic_form(adjoint(block) * block), 0.0, 1.0);
}

FidelityReport conditional_fidelity(const ComplexMatrix& target, const ComplexMatrix& actual,
                                    const SubspaceSelector& sel) {
  FidelityReport report = avg_subspace(target, actual, sel);
  const double q = acceptance_probability(actual, sel);
  if (q <= kDegenerateAcceptance) {
    std::ostringstream msg;
    msg << "conditional_fidelity: acceptance probability " << q
        << " vanishes; post-selection never succeeds";
    throw DegenerateAcceptanceError(msg.str());
  }
  report.acceptance_q = q;
  report.conditional = report.mean_fidelity / q;
  return report;
}

FidelityReport avg_kraus(const ComplexMatrix& target, const KrausChannel& channel) {
  if (!target.square() || target.rows() != channel.dim()) {
    throw ShapeError("avg_kraus: target " + target.shape() + " does not match channel dimension " +
                     std::to_string(channel.dim()));
  }
  if (!is_unitary(target)) throw ValidationError("avg_kraus: target is not unitary");
  const std::size_t n = channel.dim();
  const double nd = static_cast<double>(n);

  // Tr(sum_k M_k^dagger M_k) = sum_k ||G_k||_F^2 = n for a trace-preserving map.
  double gram = 0.0;
  double overlap = 0.0;
  for (const ComplexMatrix& g : channel.kraus()) {
    for (const Complex& z : g.entries()) gram += std::norm(z);
    overlap += std::norm(overlap_trace(target, g));
  }
  if (std::abs(gram - nd) > kCompletenessTolerance * nd) {
    std::ostringstream msg;
    msg << "avg_kraus: Tr(sum_k G_k^dagger G_k) = " << gram << ", expected " << n;
    throw ValidationError(msg.str());
  }
  FidelityReport report;
  report.kind = FidelityKind::kKraus;
  report.dim = n;
  report.mean_fidelity = std::min((nd + overlap) / (nd * (nd + 1.0)), 1.0);
  return report;
}

double composite_fidelity(std::size_t n, std::size_t k, double f_single) {
  if (n < 2) throw ValidationError("composite_fidelity: n must be at least 2");
  if (k < 1) throw ValidationError("composite_fidelity: K must be at least 1");
  const double nd = static_cast<double>(n);
  const double floor = 1.0 / (nd + 1.0);
  if (!std::isfinite(f_single) || f_single < floor || f_single > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "composite_fidelity: single-qudit fidelity " << f_single << " is outside [1/(n+1), 1] = ["
        << floor << ", 1]";
    throw ValidationError(msg.str());
  }
  if (f_single >= 1.0) return 1.0;

  const double x = std::max((nd + 1.0) * f_single - 1.0, 0.0);
  const double kd = static_cast<double>(k);

  // n^K exactly representable: evaluate directly.
  if (kd * std::log2(nd) <= 53.0) {
    double nk = 1.0;
    for (std::size_t i = 0; i < k; ++i) nk *= nd;
    return (1.0 + std::pow(x, kd)) / (nk + 1.0);
  }
  // Otherwise divide through by n^K and work with logarithms.
  const double inv_nk = std::exp(-kd * std::log(nd));
  const double scaled = x > 0.0 ? std::exp(kd * std::log(x / nd)) : 0.0;
  return (scaled + inv_nk) / (1.0 + inv_nk);
}

CompositeCheck composite_bruteforce_check(const KrausChannel& channel, std::size_t k,
                                          const TensorPowerBudget& budget) {
  const KrausChannel product = tensor_power(channel, k, budget);
  const double single =
      avg_kraus(ComplexMatrix::identity(channel.dim()), channel).mean_fidelity;
  CompositeCheck check;
  check.bruteforce = avg_kraus(ComplexMatrix::identity(product.dim()), product).mean_fidelity;
  check.closed_form = composite_fidelity(channel.dim(), k, single);
  return check;
}

}  // namespace qfid
