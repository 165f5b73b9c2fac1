// SPDX-License-Identifier: Apache-2.0
#include "gcp/linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace gcp {

namespace {

void check_equal_lengths(const std::vector<Vec>& vectors) {
  for (std::size_t i = 1; i < vectors.size(); ++i)
    if (vectors[i].size() != vectors[0].size())
      throw DimensionMismatch("orthonormalize: vectors of unequal length");
}

double leibniz_det(const Mat& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  // expand along the first row
  double det = 0.0;
  Mat minor(n - 1, n - 1);
  for (int k = 0; k < n; ++k) {
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        minor(i - 1, cc++) = a(i, j);
      }
    }
    const double term = a(0, k) * leibniz_det(minor);
    det += (k % 2 == 0) ? term : -term;
  }
  return det;
}

// Sort rows lexicographically and track the permutation parity. Determinant-
// like quantities of the sorted matrix then only need a sign fix, and
// swapping two inputs negates the result bitwise.
std::pair<std::vector<int>, int> sorted_row_order(const std::vector<Vec>& rows) {
  std::vector<int> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Vec& x = rows[a];
    const Vec& y = rows[b];
    for (int i = 0; i < x.size(); ++i) {
      if (x[i] < y[i]) return true;
      if (x[i] > y[i]) return false;
    }
    return a < b;
  });
  // parity by counting transpositions while sorting a copy
  std::vector<int> perm = order;
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    while (perm[i] != static_cast<int>(i)) {
      std::swap(perm[i], perm[perm[i]]);
      sign = -sign;
    }
  }
  return {order, sign};
}

}  // namespace

std::pair<Subspace, int> orthonormalize(const std::vector<Vec>& vectors, double tol) {
  if (tol <= 0) throw std::invalid_argument("orthonormalize: tol must be positive");
  Subspace out;
  out.orthonormal = true;
  if (vectors.empty()) {
    out.basis = Mat(0, 0);
    return {out, 0};
  }
  check_equal_lengths(vectors);
  const int n = static_cast<int>(vectors[0].size());
  std::vector<Vec> basis;
  for (const Vec& v : vectors) {
    Vec w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& u : basis) w -= u.dot(w) * u;
    const double norm = w.norm();
    if (norm < tol) continue;
    basis.push_back(w / norm);
  }
  out.basis = Mat(n, static_cast<int>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) out.basis.col(static_cast<int>(j)) = basis[j];
  return {out, static_cast<int>(basis.size())};
}

int numerical_rank(const Mat& matrix, double tol) {
  if (tol <= 0) throw std::invalid_argument("numerical_rank: tol must be positive");
  if (matrix.rows() == 0 || matrix.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(matrix);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  const double cutoff = tol * sv[0];
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  return rank;
}

Vec cross_product_minors(const std::vector<Vec>& vectors) {
  const int m = static_cast<int>(vectors.size()) + 1;
  Vec w = Vec::Zero(m);
  Mat minor(m - 1, m - 1);
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m - 1; ++i) {
      int cc = 0;
      for (int j = 0; j < m; ++j) {
        if (j == k) continue;
        minor(i, cc++) = vectors[i][j];
      }
    }
    // w_k carries the cofactor sign of entry (m, k+1) of the defining matrix
    const double det = leibniz_det(minor);
    w[k] = ((m + k + 1) % 2 == 0) ? det : -det;
  }
  return w;
}

Vec cross_product_svd(const std::vector<Vec>& vectors) {
  const int m = static_cast<int>(vectors.size()) + 1;
  Mat v(m - 1, m);
  for (int i = 0; i < m - 1; ++i) v.row(i) = vectors[i].transpose();
  Eigen::JacobiSVD<Mat> svd(v, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double scale = 1.0;
  for (int i = 0; i < sv.size(); ++i) scale *= sv[i];
  Vec w = svd.matrixV().col(m - 1) * scale;
  // fix sign by positive orientation of (v_1, ..., v_{m-1}, w)
  Mat full(m, m);
  full.topRows(m - 1) = v;
  full.row(m - 1) = w.transpose();
  if (determinant(full) < 0) w = -w;
  return w;
}

Vec cross_product(const std::vector<Vec>& vectors) {
  if (vectors.empty()) throw DimensionMismatch("cross_product: no inputs");
  const int m = static_cast<int>(vectors.size()) + 1;
  for (const Vec& v : vectors)
    if (v.size() != m)
      throw DimensionMismatch("cross_product: need m-1 vectors of length m");

  // Bitwise-equal arguments annihilate the product exactly.
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j)
      if ((vectors[i].array() == vectors[j].array()).all()) return Vec::Zero(m);

  // Evaluate on canonically ordered rows so that argument swaps flip the
  // sign exactly rather than up to roundoff.
  auto [order, sign] = sorted_row_order(vectors);
  std::vector<Vec> sorted(vectors.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = vectors[order[i]];
  Vec w = (m <= 8) ? cross_product_minors(sorted) : cross_product_svd(sorted);
  return sign > 0 ? w : Vec(-w);
}

std::vector<double> principal_angles(const Subspace& u, const Subspace& v) {
  if (!u.orthonormal || !v.orthonormal)
    throw std::invalid_argument("principal_angles: subspaces must be orthonormal");
  if (u.ambient_dim() != v.ambient_dim())
    throw DimensionMismatch("principal_angles: ambient dimension mismatch");
  if (u.dim() == 0 || v.dim() == 0) return {};
  // cosine route loses accuracy below ~1e-8; switch to the sine of the
  // projection residual for small angles
  const Mat& a = u.dim() <= v.dim() ? u.basis : v.basis;
  const Mat& b = u.dim() <= v.dim() ? v.basis : u.basis;
  Mat overlap = a.transpose() * b;
  Eigen::JacobiSVD<Mat> cos_svd(overlap);
  Mat residual = b - a * overlap;
  Eigen::JacobiSVD<Mat> sin_svd(residual);
  const auto& cosines = cos_svd.singularValues();   // descending
  const auto& sines = sin_svd.singularValues();     // descending
  const int k = static_cast<int>(std::min(a.cols(), b.cols()));
  std::vector<double> angles(k);
  for (int i = 0; i < k; ++i) {
    const double c = std::clamp(cosines[i], 0.0, 1.0);
    const double s = std::clamp(sines[static_cast<int>(sines.size()) - 1 - i], 0.0, 1.0);
    angles[i] = c * c >= 0.5 ? std::asin(s) : std::acos(c);
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

Vec project(const Subspace& u, const Vec& v) {
  if (!u.orthonormal) throw std::invalid_argument("project: subspace must be orthonormal");
  if (u.ambient_dim() != v.size()) throw DimensionMismatch("project: dimension mismatch");
  if (u.dim() == 0) return Vec::Zero(v.size());
  return u.basis * (u.basis.transpose() * v);
}

double determinant(const Mat& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant: matrix not square");
  if (a.rows() <= 6) return leibniz_det(a);
  return Eigen::PartialPivLU<Mat>(a).determinant();
}

}  // namespace gcp
