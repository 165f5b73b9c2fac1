// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "gcp/cauchy.hpp"
#include "gcp/linalg.hpp"

namespace gcp {

struct NotNormalDirection : Error {
  using Error::Error;
};

/// The bilinear map phi at a chart point, in the adapted frame: the row
/// phi_star[i] holds the E-coordinates of the D-projection of the ambient
/// derivative of the unit normal section along E_i; phi_full holds the same
/// for each frame normal N_beta. a_star is the matrix of the shape operator
/// pi_S(phi(., N*)) on E_1..E_s.
struct PhiData {
  AdaptedFramePoint frame;
  Mat phi_star;               // s x m
  std::vector<Mat> phi_full;  // c blocks, s x m each
  Mat a_star;                 // s x s, leading block of phi_star
  double sigma_min_astar = 0.0;
  double sigma_max_astar = 0.0;
  Subspace image_phi;         // span of phi(E_i, N_beta), ambient coords
  Subspace image_phi_star;    // span of phi(E_i, N*)

  /// phi(E_i, N*) as an ambient vector
  Vec phi_star_vector(int i) const;
};

/// Assembles PhiData at a chart point. Derivatives of the canonical frame
/// extension come from jets, never finite differences.
PhiData phi_data(const CauchyProblem& problem, const Vec& a);
PhiData phi_data_from(const CauchyProblem& problem, const FrameJets& frame);

/// phi rows (s x m E-coordinates) for an arbitrary symbolic section of
/// D-perp, evaluated through the same canonical unit-projection extension as
/// the prescribed one.
Mat section_phi_rows(const CauchyProblem& problem, const FrameJets& frame,
                     const std::vector<ExprAst>& section);

/// phi(E_i, normal) for an arbitrary normal argument, extended canonically
/// via constant coefficients in the frame normals. `tangent_index` is
/// 0-based. Throws NotNormalDirection if `normal` is not in D_p-perp.
Vec phi(const CauchyProblem& problem, const Vec& a, int tangent_index, const Vec& normal);

struct CheckResult {
  bool pass = false;
  double sigma_min = 0.0;   // nonsingularity witness
  double sigma_ratio = 0.0; // sigma_min / sigma_max (0 when sigma_max is 0)
  int excess_rank = 0;      // solvability witness (rank - s)
};

/// Rank A* = s, decided as sigma_min > tol * sigma_max.
CheckResult check_nonsingular(const PhiData& pd, double tol);

/// Im phi = phi(TS, N*): rank of [basis(image_phi_star) | all phi(E_i,N_b)]
/// equals s.
CheckResult check_solvability(const PhiData& pd, double tol);

/// Evaluates phi through two user-supplied extensions of the same normal
/// vector and returns the norm of the difference of the tangential parts.
/// Throws if the extensions disagree at `a`.
double well_definedness_probe(const CauchyProblem& problem, const Vec& a, int tangent_index,
                              const std::vector<ExprAst>& ext1, const std::vector<ExprAst>& ext2);

}  // namespace gcp
