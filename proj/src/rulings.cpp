// SPDX-License-Identifier: Apache-2.0
#include "gcp/rulings.hpp"

#include <Eigen/SVD>

namespace gcp {

namespace {

constexpr double kDegenerateTol = 1e-10;
constexpr double kSignTol = 1e-9;

// first E-coefficient of significant size decides the sign
void fix_sign(Vec& coeffs) {
  for (int k = 0; k < coeffs.size(); ++k) {
    if (std::abs(coeffs[k]) > kSignTol) {
      if (coeffs[k] < 0) coeffs = -coeffs;
      return;
    }
  }
}

RulingFrame assemble(const PhiData& pd, std::vector<Vec> raw_coeffs, RulingFrame::Method method) {
  const int m = static_cast<int>(pd.frame.E.size());
  RulingFrame rf;
  rf.frame_point = pd.frame;
  rf.method = method;
  rf.X_coeffs = Mat(static_cast<int>(raw_coeffs.size()), m);
  for (std::size_t j = 0; j < raw_coeffs.size(); ++j) {
    Vec c = raw_coeffs[j];
    const double norm = c.norm();
    if (norm < kDegenerateTol)
      throw DegenerateRuling("ruling " + std::to_string(j + 1) +
                             " degenerates (shape operator numerically singular)");
    c /= norm;
    fix_sign(c);
    rf.X_coeffs.row(static_cast<int>(j)) = c.transpose();
    Vec ambient = Vec::Zero(pd.frame.p.size());
    for (int k = 0; k < m; ++k) ambient += c[k] * pd.frame.E[k];
    rf.X.push_back(std::move(ambient));
  }
  return rf;
}

}  // namespace

std::vector<Vec> ruling_coeffs_cross(const Mat& phi_star, int m) {
  const int s = static_cast<int>(phi_star.rows());
  std::vector<Vec> out;
  out.reserve(m - s);
  for (int j = 0; j < m - s; ++j) {
    std::vector<Vec> args;
    args.reserve(m - 1);
    for (int i = 0; i < s; ++i) args.push_back(phi_star.row(i).transpose());
    for (int k = s; k < m; ++k) {
      if (k == s + j) continue;
      Vec e = Vec::Zero(m);
      e[k] = 1.0;
      args.push_back(std::move(e));
    }
    out.push_back(cross_product(args));
  }
  return out;
}

std::vector<Vec> ruling_coeffs_cofactor(const Mat& phi_star, int m) {
  const int s = static_cast<int>(phi_star.rows());
  std::vector<Vec> out;
  out.reserve(m - s);
  for (int j = 0; j < m - s; ++j) {
    // columns I = {1..s, s+j}; minor t omits the t-th of them
    std::vector<int> cols(s + 1);
    for (int i = 0; i < s; ++i) cols[i] = i;
    cols[s] = s + j;
    Vec x = Vec::Zero(m);
    Mat minor(s, s);
    for (int t = 0; t <= s; ++t) {
      int cc = 0;
      for (int q = 0; q <= s; ++q) {
        if (q == t) continue;
        minor.col(cc++) = phi_star.col(cols[q]);
      }
      const double det = determinant(minor);
      x[cols[t]] = (t % 2 == 0) ? -det : det;
    }
    out.push_back(std::move(x));
  }
  return out;
}

RulingFrame ruling_frame_cross(const PhiData& pd) {
  const int m = static_cast<int>(pd.frame.E.size());
  return assemble(pd, ruling_coeffs_cross(pd.phi_star, m), RulingFrame::Method::Cross);
}

RulingFrame ruling_frame_cofactor(const PhiData& pd) {
  const int m = static_cast<int>(pd.frame.E.size());
  return assemble(pd, ruling_coeffs_cofactor(pd.phi_star, m), RulingFrame::Method::Cofactor);
}

Mat kernel_in_distribution(const Mat& rows, int m, double tol) {
  if (rows.cols() != m) throw DimensionMismatch("kernel_in_distribution: bad row length");
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() && sv[0] > 0 ? tol * sv[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  return svd.matrixV().rightCols(m - rank);
}

RulingFrame fiber_nullspace_oracle(const PhiData& pd) {
  const int m = static_cast<int>(pd.frame.E.size());
  const int s = static_cast<int>(pd.phi_star.rows());
  const int c = static_cast<int>(pd.phi_full.size());
  Mat rows(s * c, m);
  for (int b = 0; b < c; ++b)
    for (int i = 0; i < s; ++i) rows.row(b * s + i) = pd.phi_full[b].row(i);
  Mat kernel = kernel_in_distribution(rows, m, 1e-9);
  if (kernel.cols() != m - s)
    throw WrongFiberDimension(static_cast<int>(kernel.cols()), m - s);
  std::vector<Vec> coeffs;
  for (int j = 0; j < kernel.cols(); ++j) coeffs.push_back(kernel.col(j));
  return assemble(pd, std::move(coeffs), RulingFrame::Method::Oracle);
}

Subspace fiber_for_section(const PhiData& pd, const Mat& section_rows, double tol) {
  const int m = static_cast<int>(pd.frame.E.size());
  Mat kernel = kernel_in_distribution(section_rows, m, tol);
  const int n = static_cast<int>(pd.frame.p.size());
  Subspace out;
  out.orthonormal = true;
  out.basis = Mat(n, kernel.cols());
  for (int j = 0; j < kernel.cols(); ++j) {
    Vec ambient = Vec::Zero(n);
    for (int k = 0; k < m; ++k) ambient += kernel(k, j) * pd.frame.E[k];
    out.basis.col(j) = ambient;
  }
  return out;
}

}  // namespace gcp
