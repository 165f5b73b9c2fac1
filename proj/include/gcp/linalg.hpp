// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "gcp/types.hpp"

namespace gcp {

/// A linear subspace of R^n given by basis vectors stored as matrix columns.
struct Subspace {
  Mat basis;  // n x k, one column per basis vector
  bool orthonormal = false;

  int ambient_dim() const { return static_cast<int>(basis.rows()); }
  int dim() const { return static_cast<int>(basis.cols()); }
};

/// Modified Gram-Schmidt with one reorthogonalization pass. Vectors whose
/// residual norm drops below `tol` are discarded; earlier inputs always win
/// over later ones. Returns the orthonormal span and its dimension.
std::pair<Subspace, int> orthonormalize(const std::vector<Vec>& vectors, double tol);

/// Number of singular values exceeding tol * sigma_max. Zero matrix -> 0.
int numerical_rank(const Mat& matrix, double tol);

/// (m-1)-fold vector cross product in an oriented m-dimensional inner product
/// space, for inputs given as coefficient vectors of length m. The result w
/// is orthogonal to every input, |w|^2 equals their Gram determinant, and
/// (v_1, ..., v_{m-1}, w) is positively oriented.
Vec cross_product(const std::vector<Vec>& vectors);

// The two evaluation routes behind cross_product, exposed so they can be
// cross-validated. The minors route expands the defining determinant along
// its last row; the SVD route completes the inputs with a scaled kernel
// vector. Dispatch: minors for m <= 8, SVD above.
Vec cross_product_minors(const std::vector<Vec>& vectors);
Vec cross_product_svd(const std::vector<Vec>& vectors);

/// Principal angles between two orthonormal subspaces of the same ambient
/// space, sorted ascending, clamped to [0, pi/2].
std::vector<double> principal_angles(const Subspace& u, const Subspace& v);

/// Orthogonal projection of v onto an orthonormal subspace.
Vec project(const Subspace& u, const Vec& v);

/// Determinant of a dense square matrix via Leibniz enumeration for n <= 6,
/// partial-pivot LU above.
double determinant(const Mat& a);

}  // namespace gcp
