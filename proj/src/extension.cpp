// SPDX-License-Identifier: Apache-2.0
#include "gcp/extension.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

#include "gcp/grid.hpp"

namespace gcp {

namespace {

constexpr double kFiberKernelTol = 1e-9;

// Finite-difference stencils probe a small collar around the closed domain
// box; expressions are analytic there.
bool inside_with_collar(const CauchyProblem& p, const Vec& a, double collar) {
  for (int i = 0; i < p.dims.s; ++i)
    if (a[i] < p.domain[i][0] - collar || a[i] > p.domain[i][1] + collar) return false;
  return true;
}

RulingFrame rulings_at_nocheck(const CauchyProblem& problem, const Vec& a, double perturbation);

double step1(const CauchyProblem& p, double override_h) {
  return override_h > 0 ? override_h : p.tol.fd_step1;
}

// Gram-Schmidt on the sigma-Jacobian columns, tracking coefficients so that
// basis.col(k) = jac * coeffs.col(k). Throws when the rank drops.
std::pair<Mat, Mat> orthonormalize_tracked(const Mat& jac, double drop_tol) {
  const int n = static_cast<int>(jac.rows());
  const int m = static_cast<int>(jac.cols());
  Mat basis(n, m), coeffs = Mat::Identity(m, m);
  for (int j = 0; j < m; ++j) {
    Vec w = jac.col(j);
    Vec cv = coeffs.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < j; ++k) {
        const double overlap = basis.col(k).dot(w);
        w -= overlap * basis.col(k);
        cv -= overlap * coeffs.col(k);
      }
    const double norm = w.norm();
    if (norm < drop_tol)
      throw ImmersionFailure("sigma fails to immerse at the sampled (a, b)");
    basis.col(j) = w / norm;
    coeffs.col(j) = cv / norm;
  }
  return {basis, coeffs};
}

// normal directions at an extension point: residuals of the standard basis
// against the given orthonormal tangent columns, first k kept
std::vector<Vec> normal_directions(const Mat& tangent_basis, int count, double keep_tol) {
  const int n = static_cast<int>(tangent_basis.rows());
  std::vector<Vec> normals;
  for (int k = 0; k < n && static_cast<int>(normals.size()) < count; ++k) {
    Vec r = Vec::Zero(n);
    r[k] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      r -= tangent_basis * (tangent_basis.transpose() * r);
      for (const Vec& u : normals) r -= u.dot(r) * u;
    }
    const double norm = r.norm();
    if (norm < keep_tol) continue;
    normals.push_back(r / norm);
  }
  if (static_cast<int>(normals.size()) < count)
    throw ImmersionFailure("could not complete a normal frame at the sampled point");
  return normals;
}

struct SecondFormData {
  std::vector<Mat> blocks;  // c blocks, m x m
  Vec spectrum;
  int index = 0;
  double min_nonzero = 0.0;
  double max_null = 0.0;
  Subspace tangent;
};

// second fundamental form in an adapted frame from raw jacobian/second data
SecondFormData second_form_from_derivs(const Mat& jac, const std::vector<Vec>& second,
                                       int codim, double rank_tol, double drop_tol,
                                       double keep_tol) {
  const int m = static_cast<int>(jac.cols());
  auto [basis, coeffs] = orthonormalize_tracked(jac, drop_tol);
  std::vector<Vec> normals = normal_directions(basis, codim, keep_tol);

  // M2[(r,q), beta] = <d2 sigma_{rq}, N_beta>
  std::vector<Mat> m2(codim, Mat(m, m));
  for (int b = 0; b < codim; ++b)
    for (int r = 0; r < m; ++r)
      for (int q = 0; q < m; ++q) m2[b](r, q) = second[r * m + q].dot(normals[b]);

  SecondFormData out;
  out.blocks.assign(codim, Mat(m, m));
  for (int b = 0; b < codim; ++b)
    out.blocks[b] = coeffs.transpose() * m2[b] * coeffs;

  Mat big(m, m * codim);
  for (int b = 0; b < codim; ++b) big.middleCols(b * m, m) = out.blocks[b];
  Eigen::JacobiSVD<Mat> svd(big);
  out.spectrum = svd.singularValues();
  int rank = 0;
  const double cutoff = out.spectrum.size() && out.spectrum[0] > 0
                            ? rank_tol * out.spectrum[0]
                            : 0.0;
  for (int i = 0; i < out.spectrum.size(); ++i)
    if (out.spectrum[i] > cutoff) ++rank;
  out.index = m - rank;
  out.min_nonzero = rank > 0 ? out.spectrum[rank - 1] : 0.0;
  out.max_null = rank < out.spectrum.size() ? out.spectrum[rank] : 0.0;

  out.tangent.basis = basis;
  out.tangent.orthonormal = true;
  return out;
}

RulingFrame align_to(RulingFrame rf, const RulingFrame& ref) {
  for (std::size_t j = 0; j < rf.X.size(); ++j) {
    if (rf.X[j].dot(ref.X[j]) < 0) {
      rf.X[j] = -rf.X[j];
      rf.X_coeffs.row(static_cast<int>(j)) *= -1.0;
    }
  }
  return rf;
}

RulingFrame rulings_at_nocheck(const CauchyProblem& problem, const Vec& a, double perturbation) {
  PhiData pd = phi_data(problem, a);
  RulingFrame rf = ruling_frame_cross(pd);
  if (perturbation != 0.0) {
    Vec tilted = rf.X_coeffs.row(0).transpose() + perturbation * pd.phi_star.row(0).transpose();
    const double norm = tilted.norm();
    if (norm < 1e-12) throw DegenerateRuling("perturbed ruling collapses");
    tilted /= norm;
    rf.X_coeffs.row(0) = tilted.transpose();
    Vec ambient = Vec::Zero(pd.frame.p.size());
    for (int k = 0; k < tilted.size(); ++k) ambient += tilted[k] * pd.frame.E[k];
    rf.X[0] = ambient;
  }
  return rf;
}

}  // namespace

Vec sigma(const RulingFrame& rulings, const Vec& b) {
  if (b.size() != static_cast<int>(rulings.X.size()))
    throw DimensionMismatch("sigma: b has wrong dimension");
  Vec out = rulings.frame_point.p;
  for (int j = 0; j < b.size(); ++j) out += b[j] * rulings.X[j];
  return out;
}

RulingFrame rulings_at(const CauchyProblem& problem, const Vec& a, double perturbation) {
  return rulings_at_nocheck(problem, a, perturbation);
}

RulingFrame rulings_at_aligned(const CauchyProblem& problem, const Vec& a, const RulingFrame& ref,
                               double perturbation) {
  return align_to(rulings_at_nocheck(problem, a, perturbation), ref);
}

Subspace ruling_span(const RulingFrame& rulings) {
  return orthonormalize(rulings.X, 1e-12).first;
}

SigmaDerivs sigma_derivs(const CauchyProblem& problem, const Vec& a, const Vec& b, bool second,
                         double perturbation) {
  const Dims& d = problem.dims;
  const int n = d.ambient();
  const int s = d.s;
  const int f = d.fiber();
  const int m = d.m;
  const double h1 = problem.tol.fd_step1;
  const double h2 = problem.tol.fd_step2;
  if (!inside_with_collar(problem, a, 2 * std::max(h1, h2)))
    throw OutsideDomain("sigma_derivs: chart point outside domain box");

  FrameJets fj = frame_jets(problem, a);
  SigmaDerivs sd;
  sd.rulings = rulings_at_nocheck(problem, a, perturbation);

  sd.value = Vec::Zero(n);
  for (int k = 0; k < n; ++k) sd.value[k] = fj.xi[k].v;
  for (int j = 0; j < f; ++j) sd.value += b[j] * sd.rulings.X[j];

  // first derivatives of the ruling field
  std::vector<std::vector<Vec>> dx(s, std::vector<Vec>(f));
  std::vector<RulingFrame> plus1(s), minus1(s);
  for (int i = 0; i < s; ++i) {
    Vec ap = a, am = a;
    ap[i] += h1;
    am[i] -= h1;
    plus1[i] = rulings_at_aligned(problem, ap, sd.rulings, perturbation);
    minus1[i] = rulings_at_aligned(problem, am, sd.rulings, perturbation);
    for (int j = 0; j < f; ++j) dx[i][j] = (plus1[i].X[j] - minus1[i].X[j]) / (2 * h1);
  }

  sd.jac = Mat(n, m);
  for (int i = 0; i < s; ++i) {
    Vec col(n);
    for (int k = 0; k < n; ++k) col[k] = fj.xi[k].g[i];
    for (int j = 0; j < f; ++j) col += b[j] * dx[i][j];
    sd.jac.col(i) = col;
  }
  for (int j = 0; j < f; ++j) sd.jac.col(s + j) = sd.rulings.X[j];

  if (!second) return sd;

  // second derivatives of the ruling field, wider stencil
  std::vector<std::vector<std::vector<Vec>>> d2x(
      s, std::vector<std::vector<Vec>>(s, std::vector<Vec>(f)));
  for (int i = 0; i < s; ++i) {
    Vec ap = a, am = a;
    ap[i] += h2;
    am[i] -= h2;
    RulingFrame rp = rulings_at_aligned(problem, ap, sd.rulings, perturbation);
    RulingFrame rm = rulings_at_aligned(problem, am, sd.rulings, perturbation);
    for (int j = 0; j < f; ++j)
      d2x[i][i][j] = (rp.X[j] - 2.0 * sd.rulings.X[j] + rm.X[j]) / (h2 * h2);
  }
  for (int i = 0; i < s; ++i)
    for (int l = i + 1; l < s; ++l) {
      Vec app = a, apm = a, amp = a, amm = a;
      app[i] += h2; app[l] += h2;
      apm[i] += h2; apm[l] -= h2;
      amp[i] -= h2; amp[l] += h2;
      amm[i] -= h2; amm[l] -= h2;
      RulingFrame rpp = rulings_at_aligned(problem, app, sd.rulings, perturbation);
      RulingFrame rpm = rulings_at_aligned(problem, apm, sd.rulings, perturbation);
      RulingFrame rmp = rulings_at_aligned(problem, amp, sd.rulings, perturbation);
      RulingFrame rmm = rulings_at_aligned(problem, amm, sd.rulings, perturbation);
      for (int j = 0; j < f; ++j) {
        d2x[i][l][j] = (rpp.X[j] - rpm.X[j] - rmp.X[j] + rmm.X[j]) / (4 * h2 * h2);
        d2x[l][i][j] = d2x[i][l][j];
      }
    }

  sd.second.assign(m * m, Vec::Zero(n));
  for (int i = 0; i < s; ++i)
    for (int l = 0; l < s; ++l) {
      Vec v(n);
      for (int k = 0; k < n; ++k) v[k] = fj.xi[k].h(i, l);
      for (int j = 0; j < f; ++j) v += b[j] * d2x[i][l][j];
      sd.second[i * m + l] = v;
    }
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < f; ++j) {
      sd.second[i * m + (s + j)] = dx[i][j];
      sd.second[(s + j) * m + i] = dx[i][j];
    }
  // d2 sigma / db db = 0, already zeroed
  return sd;
}

Subspace tangent_space(const CauchyProblem& problem, const Vec& a, const Vec& b, double h,
                       double perturbation) {
  CauchyProblem local = problem;
  local.tol.fd_step1 = step1(problem, h);
  SigmaDerivs sd = sigma_derivs(local, a, b, false, perturbation);
  Subspace out;
  out.basis = orthonormalize_tracked(sd.jac, problem.tol.ortho_drop).first;
  out.orthonormal = true;
  return out;
}

double verify_constant_tangent(const CauchyProblem& problem, const Vec& a,
                               const std::vector<Vec>& b_samples, double h, double perturbation) {
  const Vec b0 = Vec::Zero(problem.dims.fiber());
  Subspace base = tangent_space(problem, a, b0, h, perturbation);
  double worst = 0.0;
  for (const Vec& b : b_samples) {
    Subspace tb = tangent_space(problem, a, b, h, perturbation);
    const auto angles = principal_angles(base, tb);
    if (!angles.empty()) worst = std::max(worst, angles.back());
  }
  return worst;
}

ExtensionSample relative_nullity_index(const CauchyProblem& problem, const Vec& a, const Vec& b,
                                       double tol, double perturbation) {
  const Dims& d = problem.dims;
  SigmaDerivs sd = sigma_derivs(problem, a, b, true, perturbation);
  SecondFormData sf = second_form_from_derivs(sd.jac, sd.second, d.c, tol,
                                              problem.tol.ortho_drop, problem.tol.frame_keep);
  ExtensionSample out;
  out.a = a;
  out.b = b;
  out.point = sd.value;
  out.tangent = sf.tangent;
  out.second_form = sf.blocks;
  out.nullity_index = sf.index;
  out.min_nonzero_sv = sf.min_nonzero;
  out.max_null_sv = sf.max_null;
  out.spectrum = sf.spectrum;
  return out;
}

Mat shape_block_transported(const CauchyProblem& problem, const PhiData& pd, const Vec& b,
                            double perturbation) {
  const Dims& d = problem.dims;
  SigmaDerivs sd = sigma_derivs(problem, pd.frame.a, b, true, perturbation);
  Eigen::ColPivHouseholderQR<Mat> qr(sd.jac);
  Mat c(d.m, d.s);
  for (int i = 0; i < d.s; ++i) c.col(i) = qr.solve(pd.frame.E[i]);
  Mat block(d.s, d.s);
  for (int i = 0; i < d.s; ++i)
    for (int k = 0; k < d.s; ++k) {
      double acc = 0.0;
      for (int r = 0; r < d.m; ++r)
        for (int q = 0; q < d.m; ++q)
          acc += c(r, i) * c(q, k) * sd.second[r * d.m + q].dot(pd.frame.nstar_unit);
      block(i, k) = acc;
    }
  return block;
}

std::pair<int, Vec> map_nullity(const std::vector<ExprAst>& map, const Vec& point, double tol) {
  const int n = static_cast<int>(map.size());
  const int d = map.empty() ? 0 : map[0].params();
  if (n <= d) throw DimensionMismatch("map_nullity: map must increase dimension");
  std::vector<Jet2> jets;
  jets.reserve(n);
  for (const ExprAst& e : map) jets.push_back(eval_jet2(e, point));
  Mat jac(n, d);
  for (int k = 0; k < n; ++k) jac.row(k) = jets[k].g.transpose();
  std::vector<Vec> second(d * d, Vec(n));
  for (int r = 0; r < d; ++r)
    for (int q = 0; q < d; ++q)
      for (int k = 0; k < n; ++k) second[r * d + q][k] = jets[k].h(r, q);
  SecondFormData sf = second_form_from_derivs(jac, second, n - d, tol, 1e-10, 1e-8);
  return {sf.index, sf.spectrum};
}

double default_b_max(const CauchyProblem& problem, int grid_points) {
  if (problem.bmax_override) return *problem.bmax_override;
  Grid grid = make_grid(problem.domain, grid_points);
  const double h1 = problem.tol.fd_step1;
  double min_sigma = std::numeric_limits<double>::infinity();
  double max_deriv = 0.0;
  for (const Vec& a : grid.points) {
    SigmaDerivs sd = sigma_derivs(problem, a, Vec::Zero(problem.dims.fiber()), false);
    Eigen::JacobiSVD<Mat> svd(sd.jac);
    min_sigma = std::min(min_sigma, svd.singularValues().minCoeff());
    for (int i = 0; i < problem.dims.s; ++i) {
      Vec ap = a, am = a;
      ap[i] += h1;
      am[i] -= h1;
      RulingFrame rp = rulings_at_aligned(problem, ap, sd.rulings);
      RulingFrame rm = rulings_at_aligned(problem, am, sd.rulings);
      for (int j = 0; j < problem.dims.fiber(); ++j)
        max_deriv = std::max(max_deriv, ((rp.X[j] - rm.X[j]) / (2 * h1)).norm());
    }
  }
  if (max_deriv < 1e-12) return 1.0;  // parallel rulings: no focal scale
  return 0.25 * min_sigma / max_deriv;
}

std::vector<Vec> default_b_samples(int fiber_dim, double b_max) {
  std::vector<Vec> samples;
  samples.push_back(Vec::Zero(fiber_dim));
  for (int j = 0; j < fiber_dim; ++j) {
    for (double scale : {1.0, -1.0, 0.5, -0.5}) {
      Vec b = Vec::Zero(fiber_dim);
      b[j] = scale * b_max;
      samples.push_back(std::move(b));
    }
  }
  if (fiber_dim > 1)
    samples.push_back(Vec::Constant(fiber_dim, b_max / std::sqrt(double(fiber_dim))));
  return samples;
}

namespace {

struct StageA {
  PointHypothesis hyp;
  bool rulings_ok = false;
  double sigma_min_jac = 0.0;
  double max_dx = 0.0;
  std::string ruling_error;
};

}  // namespace

Certificate certify(const CauchyProblem& problem, int grid_points, const Tolerances& tol,
                    const CertifyOptions& opts) {
  const Dims& d = problem.dims;
  CauchyProblem prob = problem;  // pin the tolerances used for this run
  prob.tol = tol;
  Grid grid = make_grid(prob.domain, grid_points);
  const int npts = grid.size();

  Certificate cert;
  cert.problem_digest = opts.problem_digest;
  cert.grid_points = grid_points;
  cert.total_points = npts;
  cert.tol = tol;
  cert.expected_index = d.fiber();
  cert.hypotheses.resize(npts);
  const int threads = std::max(1, opts.threads);

  // stage A: hypotheses, rulings, tube scale inputs
  std::vector<StageA> stage(npts);
  parallel_for(npts, threads, [&](int idx) {
    StageA& st = stage[idx];
    st.hyp.grid_index = idx;
    st.hyp.a = grid.points[idx];
    try {
      PhiData pd = phi_data(prob, grid.points[idx]);
      st.hyp.nonsingular = check_nonsingular(pd, tol.hypothesis);
      if (st.hyp.nonsingular.pass) {
        st.hyp.solvable = check_solvability(pd, tol.hypothesis);
        st.hyp.solvability_evaluated = true;
      }
      if (st.hyp.pass()) {
        SigmaDerivs sd = sigma_derivs(prob, grid.points[idx], Vec::Zero(d.fiber()), false,
                                      opts.ruling_perturbation);
        Eigen::JacobiSVD<Mat> svd(sd.jac);
        st.sigma_min_jac = svd.singularValues().minCoeff();
        const double h1 = tol.fd_step1;
        for (int i = 0; i < d.s; ++i) {
          Vec ap = grid.points[idx], am = grid.points[idx];
          ap[i] += h1;
          am[i] -= h1;
          RulingFrame rp = rulings_at_aligned(prob, ap, sd.rulings, opts.ruling_perturbation);
          RulingFrame rm = rulings_at_aligned(prob, am, sd.rulings, opts.ruling_perturbation);
          for (int j = 0; j < d.fiber(); ++j)
            st.max_dx = std::max(st.max_dx, ((rp.X[j] - rm.X[j]) / (2 * h1)).norm());
        }
        st.rulings_ok = true;
      }
    } catch (const DegenerateRuling& e) {
      st.ruling_error = e.what();
    } catch (const Error& e) {
      st.hyp.frame_ok = false;
      st.hyp.frame_error = e.what();
    }
  });

  for (int i = 0; i < npts; ++i) cert.hypotheses[i] = stage[i].hyp;

  // verdict on hypotheses, worst witnesses
  int worst_frame = -1, worst_nonsing = -1, worst_solv = -1, worst_ruling = -1;
  double worst_ratio = std::numeric_limits<double>::infinity();
  int worst_excess = 0;
  cert.worst_sigma_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < npts; ++i) {
    const PointHypothesis& h = cert.hypotheses[i];
    if (!h.frame_ok && worst_frame < 0) worst_frame = i;
    if (h.frame_ok && !h.nonsingular.pass && h.nonsingular.sigma_ratio <= worst_ratio) {
      worst_ratio = h.nonsingular.sigma_ratio;
      worst_nonsing = i;
    }
    if (h.solvability_evaluated && !h.solvable.pass && h.solvable.excess_rank >= worst_excess) {
      worst_excess = h.solvable.excess_rank;
      worst_solv = i;
    }
    if (h.pass() && !stage[i].rulings_ok && worst_ruling < 0) worst_ruling = i;
    if (h.frame_ok) cert.worst_sigma_ratio = std::min(cert.worst_sigma_ratio, h.nonsingular.sigma_ratio);
  }
  if (!std::isfinite(cert.worst_sigma_ratio)) cert.worst_sigma_ratio = 0.0;
  auto fail = [&](const std::string& reason, int point) {
    cert.certified = false;
    cert.failure_reason = reason;
    cert.worst_point = point;
    if (point >= 0) cert.worst_a = grid.points[point];
  };
  if (worst_frame >= 0) {
    fail("frame", worst_frame);
    return cert;
  }
  if (worst_nonsing >= 0) {
    fail("nonsingularity", worst_nonsing);
    return cert;
  }
  if (worst_solv >= 0) {
    fail("solvability", worst_solv);
    return cert;
  }
  if (worst_ruling >= 0) {
    fail("ruling", worst_ruling);
    return cert;
  }

  // tube half-width
  double min_sigma = std::numeric_limits<double>::infinity();
  double max_deriv = 0.0;
  for (const StageA& st : stage) {
    min_sigma = std::min(min_sigma, st.sigma_min_jac);
    max_deriv = std::max(max_deriv, st.max_dx);
  }
  cert.b_max = prob.bmax_override ? *prob.bmax_override
                                  : (max_deriv < 1e-12 ? 1.0 : 0.25 * min_sigma / max_deriv);

  const std::vector<Vec> b_samples = default_b_samples(d.fiber(), cert.b_max);

  // stage B: verification of the extension
  cert.verification.resize(npts);
  parallel_for(npts, threads, [&](int idx) {
    PointVerification& v = cert.verification[idx];
    v.grid_index = idx;
    v.evaluated = true;
    const Vec& a = grid.points[idx];
    try {
      FrameJets fj = frame_jets(prob, a);
      PhiData pd = phi_data_from(prob, fj);
      RulingFrame rf = rulings_at(prob, a, opts.ruling_perturbation);

      v.containment = (sigma(rf, Vec::Zero(d.fiber())) - pd.frame.p).norm();

      Subspace t0 = tangent_space(prob, a, Vec::Zero(d.fiber()), 0.0, opts.ruling_perturbation);
      std::vector<Vec> dvecs = pd.frame.E;
      Subspace dsub = orthonormalize(dvecs, 1e-12).first;
      const auto angles0 = principal_angles(t0, dsub);
      v.tangency_b0 = angles0.empty() ? 0.0 : angles0.back();

      v.constant_tangent =
          verify_constant_tangent(prob, a, b_samples, 0.0, opts.ruling_perturbation);

      v.min_index = d.m + 1;
      v.max_index = -1;
      for (const Vec& b : b_samples) {
        ExtensionSample es =
            relative_nullity_index(prob, a, b, tol.nullity_rank, opts.ruling_perturbation);
        v.min_index = std::min(v.min_index, es.nullity_index);
        v.max_index = std::max(v.max_index, es.nullity_index);
        if (es.min_nonzero_sv > 0 && es.max_null_sv > 0)
          v.max_gap_ratio = std::max(v.max_gap_ratio, es.max_null_sv / es.min_nonzero_sv);
        if (b.norm() > 0) {
          Mat block = shape_block_transported(prob, pd, b, opts.ruling_perturbation);
          v.shape_transport =
              std::max(v.shape_transport, (block + pd.a_star).cwiseAbs().maxCoeff());
        }
      }

      if (prob.nstar_alt) {
        Mat alt_rows = section_phi_rows(prob, fj, *prob.nstar_alt);
        Subspace fiber_star = fiber_for_section(pd, pd.phi_star, kFiberKernelTol);
        Subspace fiber_alt = fiber_for_section(pd, alt_rows, kFiberKernelTol);
        if (fiber_star.dim() != fiber_alt.dim()) {
          v.uniqueness_angle = M_PI / 2;
        } else {
          const auto angles = principal_angles(fiber_star, fiber_alt);
          v.uniqueness_angle = angles.empty() ? 0.0 : angles.back();
        }
      }
    } catch (const Error& e) {
      v.immersion_ok = false;
      v.error = e.what();
    }
  });

  // reduce stage B
  int worst_immersion = -1, worst_containment = -1, worst_tangency = -1, worst_ct = -1,
      worst_null = -1, worst_gap = -1, worst_shape = -1, worst_unique = -1;
  for (int i = 0; i < npts; ++i) {
    const PointVerification& v = cert.verification[i];
    if (!v.immersion_ok && worst_immersion < 0) worst_immersion = i;
    if (!v.immersion_ok) continue;
    if (v.containment > cert.max_containment) {
      cert.max_containment = v.containment;
      if (v.containment > 0) worst_containment = i;
    }
    if (v.tangency_b0 >= cert.max_tangency_b0) {
      cert.max_tangency_b0 = v.tangency_b0;
      if (v.tangency_b0 > tol.tangency_b0) worst_tangency = i;
    }
    if (v.constant_tangent >= cert.max_constant_tangent) {
      cert.max_constant_tangent = v.constant_tangent;
      if (v.constant_tangent > tol.constant_tangent) worst_ct = i;
    }
    if (v.min_index != d.fiber() || v.max_index != d.fiber()) worst_null = i;
    if (v.max_gap_ratio >= cert.max_gap_ratio) {
      cert.max_gap_ratio = v.max_gap_ratio;
      if (v.max_gap_ratio > tol.gap_ratio) worst_gap = i;
    }
    if (v.shape_transport >= cert.max_shape_transport) {
      cert.max_shape_transport = v.shape_transport;
      if (v.shape_transport > tol.shape_transport) worst_shape = i;
    }
    if (v.uniqueness_angle >= cert.max_uniqueness_angle) {
      cert.max_uniqueness_angle = v.uniqueness_angle;
      if (v.uniqueness_angle > tol.uniqueness_angle) worst_unique = i;
    }
  }
  if (worst_immersion >= 0) {
    fail("immersion", worst_immersion);
    return cert;
  }
  if (worst_containment >= 0) {
    fail("containment", worst_containment);
    return cert;
  }
  if (worst_tangency >= 0) {
    fail("tangency", worst_tangency);
    return cert;
  }
  if (worst_ct >= 0) {
    fail("constant_tangent", worst_ct);
    return cert;
  }
  if (worst_null >= 0) {
    fail("nullity", worst_null);
    return cert;
  }
  if (worst_gap >= 0) {
    fail("nullity_gap", worst_gap);
    return cert;
  }
  if (worst_shape >= 0) {
    fail("shape_transport", worst_shape);
    return cert;
  }
  if (worst_unique >= 0) {
    fail("uniqueness", worst_unique);
    return cert;
  }
  cert.certified = true;
  return cert;
}

}  // namespace gcp
