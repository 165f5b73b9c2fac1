// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "gcp/nullity.hpp"

namespace gcp {

/// Basis X_1..X_{m-s} of the ruling fiber F*_p = D_p ∩ (Im phi_p)^perp.
/// Vectors are unit length with the first significant E-coefficient
/// positive, so repeated runs produce identical output.
struct RulingFrame {
  enum class Method { Cross, Cofactor, Oracle };

  AdaptedFramePoint frame_point;
  std::vector<Vec> X;  // ambient coordinates
  Mat X_coeffs;        // (m-s) x m, coordinates in the E-basis
  Method method = Method::Cross;
};

/// Raw E-basis coefficient vectors of the two formula routes, before any
/// normalization. Pure linear algebra on an s x m coefficient matrix; used
/// directly by the formula-equivalence tests.
///
/// Cross route: X_j is the (m-1)-fold cross product of the s phi rows with
/// the basis vectors e_{s+1}, ..., e_m, omitting e_{s+j}.
std::vector<Vec> ruling_coeffs_cross(const Mat& phi_star, int m);

/// Cofactor route: expansion along the last row of the (s+1) x (s+1)
/// determinant whose rows are the phi columns I = {1..s, s+j} and the frame
/// vectors E_k, k in I. Minor determinants are evaluated by permutation
/// enumeration for s <= 6 and by LU beyond.
std::vector<Vec> ruling_coeffs_cofactor(const Mat& phi_star, int m);

RulingFrame ruling_frame_cross(const PhiData& pd);
RulingFrame ruling_frame_cofactor(const PhiData& pd);

/// Direct route: orthonormal kernel of the map D_p -> R^{s c} built from all
/// phi(E_i, N_beta) rows, via singular vectors. Dimension must be m - s;
/// otherwise WrongFiberDimension reports the actual kernel dimension
/// (solvability failure).
RulingFrame fiber_nullspace_oracle(const PhiData& pd);

/// Kernel within D of an arbitrary row matrix (k x m) of E-coordinates,
/// returned as m x dim E-coefficients. Used by the oracle and by the
/// section-independence probe.
Mat kernel_in_distribution(const Mat& rows, int m, double tol);

/// Fiber computed from a single section's rows: D ∩ phi(TS, section)^perp.
Subspace fiber_for_section(const PhiData& pd, const Mat& section_rows, double tol);

}  // namespace gcp
