// SPDX-License-Identifier: Apache-2.0
#include "gcp/nullity.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

namespace gcp {

namespace {

// chart directions u_i with J_xi u_i = E_i, exact for tangent frame vectors
Mat chart_directions(const AdaptedFramePoint& fp, int s) {
  Mat u(s, s);
  Eigen::ColPivHouseholderQR<Mat> qr(fp.jacobian_xi);
  for (int i = 0; i < s; ++i) u.col(i) = qr.solve(fp.E[i]);
  return u;
}

// E-coordinates of the D-projection of the derivative of `field` along E_i
Mat phi_rows(const AdaptedFramePoint& fp, const Mat& u, const JetField& field) {
  const int s = static_cast<int>(u.cols());
  const int m = static_cast<int>(fp.E.size());
  const int n = static_cast<int>(fp.p.size());
  Mat rows(s, m);
  for (int i = 0; i < s; ++i) {
    Vec deriv = Vec::Zero(n);
    for (int q = 0; q < s; ++q) deriv += u(q, i) * field.partial(q);
    for (int k = 0; k < m; ++k) rows(i, k) = deriv.dot(fp.E[k]);
  }
  return rows;
}

Vec ambient_from_coords(const AdaptedFramePoint& fp, const Vec& coords) {
  Vec out = Vec::Zero(fp.p.size());
  for (int k = 0; k < coords.size(); ++k) out += coords[k] * fp.E[k];
  return out;
}

}  // namespace

Vec PhiData::phi_star_vector(int i) const { return ambient_from_coords(frame, phi_star.row(i)); }

PhiData phi_data(const CauchyProblem& problem, const Vec& a) {
  return phi_data_from(problem, frame_jets(problem, a));
}

PhiData phi_data_from(const CauchyProblem& problem, const FrameJets& fj) {
  const Dims& d = problem.dims;
  PhiData pd;
  pd.frame = fj.point();
  const Mat u = chart_directions(pd.frame, d.s);

  pd.phi_star = phi_rows(pd.frame, u, fj.nstar_unit);
  pd.phi_full.reserve(d.c);
  for (int b = 0; b < d.c; ++b) pd.phi_full.push_back(phi_rows(pd.frame, u, fj.N[b]));

  pd.a_star = pd.phi_star.leftCols(d.s);
  Eigen::JacobiSVD<Mat> svd(pd.a_star);
  const auto& sv = svd.singularValues();
  pd.sigma_max_astar = sv.size() ? sv[0] : 0.0;
  pd.sigma_min_astar = sv.size() ? sv[sv.size() - 1] : 0.0;

  std::vector<Vec> star_vectors, full_vectors;
  for (int i = 0; i < d.s; ++i) star_vectors.push_back(pd.phi_star_vector(i));
  for (int b = 0; b < d.c; ++b)
    for (int i = 0; i < d.s; ++i)
      full_vectors.push_back(ambient_from_coords(pd.frame, pd.phi_full[b].row(i)));
  pd.image_phi_star = orthonormalize(star_vectors, problem.tol.ortho_drop).first;
  pd.image_phi = orthonormalize(full_vectors, problem.tol.ortho_drop).first;
  return pd;
}

Mat section_phi_rows(const CauchyProblem& problem, const FrameJets& frame,
                     const std::vector<ExprAst>& section) {
  AdaptedFramePoint fp = frame.point();
  const Mat u = chart_directions(fp, problem.dims.s);
  JetField unit = unit_normal_section(frame, section, frame.a);
  return phi_rows(fp, u, unit);
}

Vec phi(const CauchyProblem& problem, const Vec& a, int tangent_index, const Vec& normal) {
  const Dims& d = problem.dims;
  if (tangent_index < 0 || tangent_index >= d.s)
    throw std::invalid_argument("phi: tangent index out of range");
  PhiData pd = phi_data(problem, a);
  Vec coeffs(d.c);
  Vec residual = normal;
  for (int b = 0; b < d.c; ++b) {
    coeffs[b] = normal.dot(pd.frame.N[b]);
    residual -= coeffs[b] * pd.frame.N[b];
  }
  if (residual.norm() >= 1e-9 * std::max(1.0, normal.norm()))
    throw NotNormalDirection("phi: argument is not a vector in D-perp at the point");
  Vec coords = Vec::Zero(d.m);
  for (int b = 0; b < d.c; ++b) coords += coeffs[b] * pd.phi_full[b].row(tangent_index).transpose();
  return ambient_from_coords(pd.frame, coords);
}

CheckResult check_nonsingular(const PhiData& pd, double tol) {
  CheckResult r;
  r.sigma_min = pd.sigma_min_astar;
  r.sigma_ratio = pd.sigma_max_astar > 0 ? pd.sigma_min_astar / pd.sigma_max_astar : 0.0;
  r.pass = pd.sigma_min_astar > tol * pd.sigma_max_astar && pd.sigma_max_astar > 0;
  return r;
}

CheckResult check_solvability(const PhiData& pd, double tol) {
  const int s = static_cast<int>(pd.phi_star.rows());
  const int n = pd.image_phi_star.ambient_dim();
  const int c = static_cast<int>(pd.phi_full.size());
  Mat stacked(n, pd.image_phi_star.dim() + s * c);
  int col = 0;
  for (int j = 0; j < pd.image_phi_star.dim(); ++j)
    stacked.col(col++) = pd.image_phi_star.basis.col(j);
  for (int b = 0; b < c; ++b)
    for (int i = 0; i < s; ++i)
      stacked.col(col++) = ambient_from_coords(pd.frame, pd.phi_full[b].row(i));
  const int rank = numerical_rank(stacked, tol);
  CheckResult r;
  r.excess_rank = rank - s;
  r.pass = rank == s;
  r.sigma_min = pd.sigma_min_astar;
  r.sigma_ratio = pd.sigma_max_astar > 0 ? pd.sigma_min_astar / pd.sigma_max_astar : 0.0;
  return r;
}

double well_definedness_probe(const CauchyProblem& problem, const Vec& a, int tangent_index,
                              const std::vector<ExprAst>& ext1, const std::vector<ExprAst>& ext2) {
  const Dims& d = problem.dims;
  if (tangent_index < 0 || tangent_index >= d.s)
    throw std::invalid_argument("well_definedness_probe: tangent index out of range");
  FrameJets fj = frame_jets(problem, a);
  AdaptedFramePoint fp = fj.point();
  const Mat u = chart_directions(fp, d.s);

  JetField f1, f2;
  f1.c.reserve(d.ambient());
  f2.c.reserve(d.ambient());
  for (const ExprAst& e : ext1) f1.c.push_back(Jet1(eval_jet2(e, a)));
  for (const ExprAst& e : ext2) f2.c.push_back(Jet1(eval_jet2(e, a)));
  if ((f1.values() - f2.values()).norm() > 1e-9)
    throw Error("well_definedness_probe: extensions disagree at the base point");

  Mat rows1 = phi_rows(fp, u, f1);
  Mat rows2 = phi_rows(fp, u, f2);
  return (rows1.row(tangent_index) - rows2.row(tangent_index)).norm();
}

}  // namespace gcp
