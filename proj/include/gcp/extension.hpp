// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "gcp/rulings.hpp"

namespace gcp {

/// sigma(a, b) = xi(a) + sum_j b^j X_j(a), affine in b.
Vec sigma(const RulingFrame& rulings, const Vec& b);

/// Ruling frame at a chart point (cross-product route, the reference
/// construction). `perturbation` adds eps * phi(E_1, N*) to X_1 before
/// re-normalizing; nonzero values exist for negative-control runs only.
RulingFrame rulings_at(const CauchyProblem& problem, const Vec& a, double perturbation = 0.0);

/// Same, with signs aligned to a reference frame so the field can be
/// finite-differenced across stencil points.
RulingFrame rulings_at_aligned(const CauchyProblem& problem, const Vec& a, const RulingFrame& ref,
                               double perturbation = 0.0);

Subspace ruling_span(const RulingFrame& rulings);

/// Value, Jacobian and (optionally) all second partials of sigma at (a, b).
/// Chart contributions come from jets; ruling-field derivatives from central
/// differences with steps h1 (first order) and h2 (second order).
struct SigmaDerivs {
  Vec value;
  Mat jac;                  // (m+c) x m, columns d/da_1..d/da_s, d/db_1..
  std::vector<Vec> second;  // m*m entries (i*m + l), filled when requested
  RulingFrame rulings;      // frame at a (center of the stencils)
};
SigmaDerivs sigma_derivs(const CauchyProblem& problem, const Vec& a, const Vec& b, bool second,
                         double perturbation = 0.0);

/// Orthonormalized span of the m partial derivatives of sigma. Throws
/// ImmersionFailure when the rank drops below m (b outside the embedded
/// tube). `h` overrides the first-order stencil step when positive.
Subspace tangent_space(const CauchyProblem& problem, const Vec& a, const Vec& b, double h = 0.0,
                       double perturbation = 0.0);

/// Max over the b samples of the largest principal angle between the tangent
/// space at (a, b) and the one at (a, 0).
double verify_constant_tangent(const CauchyProblem& problem, const Vec& a,
                               const std::vector<Vec>& b_samples, double h = 0.0,
                               double perturbation = 0.0);

/// Second fundamental form of the extension at (a, b) in an adapted frame
/// built from the sigma-Jacobian, and the resulting index of relative
/// nullity with its singular-value split.
struct ExtensionSample {
  Vec a;
  Vec b;
  Vec point;
  Subspace tangent;
  std::vector<Mat> second_form;  // c blocks, m x m
  int nullity_index = 0;
  double min_nonzero_sv = 0.0;
  double max_null_sv = 0.0;
  Vec spectrum;
};
ExtensionSample relative_nullity_index(const CauchyProblem& problem, const Vec& a, const Vec& b,
                                       double tol, double perturbation = 0.0);

/// s x s block of the second form at (a, b) taken against the frame vectors
/// E_i(a) and the parallel-translated section N*(a); for a certified
/// extension it equals -a_star(a).
Mat shape_block_transported(const CauchyProblem& problem, const PhiData& pd, const Vec& b,
                            double perturbation = 0.0);

/// Nullity of an arbitrary symbolic immersion R^d -> R^{d+k} at a point:
/// (index, singular values of the second form). Independent of the Cauchy
/// pipeline; used as a control oracle.
std::pair<int, Vec> map_nullity(const std::vector<ExprAst>& map, const Vec& point, double tol);

struct PointHypothesis {
  int grid_index = 0;
  Vec a;
  bool frame_ok = true;
  std::string frame_error;
  CheckResult nonsingular;
  CheckResult solvable;
  bool solvability_evaluated = false;
  bool pass() const { return frame_ok && nonsingular.pass && solvable.pass; }
};

struct PointVerification {
  int grid_index = 0;
  bool evaluated = false;
  bool immersion_ok = true;
  std::string error;
  double containment = 0.0;
  double tangency_b0 = 0.0;
  double constant_tangent = 0.0;
  int min_index = 0;
  int max_index = 0;
  double max_gap_ratio = 0.0;
  double shape_transport = 0.0;
  double uniqueness_angle = 0.0;
};

struct Certificate {
  std::string problem_digest;
  int grid_points = 0;
  int total_points = 0;
  Tolerances tol;
  double b_max = 0.0;
  int expected_index = 0;
  std::vector<PointHypothesis> hypotheses;
  std::vector<PointVerification> verification;
  bool certified = false;
  std::string failure_reason;  // empty when certified
  int worst_point = -1;
  Vec worst_a;
  // grid-wide maxima, for the report
  double worst_sigma_ratio = 0.0;
  double max_containment = 0.0;
  double max_tangency_b0 = 0.0;
  double max_constant_tangent = 0.0;
  double max_gap_ratio = 0.0;
  double max_shape_transport = 0.0;
  double max_uniqueness_angle = 0.0;
};

struct CertifyOptions {
  int threads = 1;
  double ruling_perturbation = 0.0;  // negative-control knob
  std::string problem_digest;
};

/// Runs the hypothesis checks and the extension verification over the chart
/// grid. Failures never throw; they are encoded in the verdict.
Certificate certify(const CauchyProblem& problem, int grid_points, const Tolerances& tol,
                    const CertifyOptions& opts = {});

/// Tube half-width used by certification and exporters: 0.25 * min over the
/// grid of the smallest sigma-Jacobian singular value at b = 0 divided by
/// the largest ruling-derivative norm (capped when rulings are parallel).
double default_b_max(const CauchyProblem& problem, int grid_points);

std::vector<Vec> default_b_samples(int fiber_dim, double b_max);

}  // namespace gcp
