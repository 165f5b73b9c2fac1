// SPDX-License-Identifier: Apache-2.0
#include "gcp/cauchy.hpp"

#include <cmath>

namespace gcp {

namespace {

constexpr double kNstarVanishTol = 1e-10;

Jet1 dot(const JetField& u, const JetField& v) {
  Jet1 acc = Jet1::constant(0.0, static_cast<int>(u.c[0].g.size()));
  for (std::size_t k = 0; k < u.c.size(); ++k) acc = acc + u.c[k] * v.c[k];
  return acc;
}

void subtract_scaled(JetField& w, const Jet1& coeff, const JetField& u) {
  for (std::size_t k = 0; k < w.c.size(); ++k) w.c[k] = w.c[k] - coeff * u.c[k];
}

double value_norm(const JetField& w) {
  double acc = 0.0;
  for (const Jet1& x : w.c) acc += x.v * x.v;
  return std::sqrt(acc);
}

JetField normalized(const JetField& w) {
  Jet1 n2 = dot(w, w);
  Jet1 n = sqrt(n2);
  JetField out = w;
  for (auto& x : out.c) x = x / n;
  return out;
}

// two projection passes against an orthonormal set
void orthogonalize_against(JetField& w, const std::vector<JetField>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const JetField& u : basis) subtract_scaled(w, dot(u, w), u);
}

JetField eval_field(const std::vector<ExprAst>& exprs, const Vec& a) {
  JetField f;
  f.c.reserve(exprs.size());
  for (const ExprAst& e : exprs) f.c.push_back(Jet1(eval_jet2(e, a)));
  return f;
}

}  // namespace

AdaptedFramePoint FrameJets::point() const {
  AdaptedFramePoint fp;
  fp.a = a;
  const int n = static_cast<int>(xi.size());
  const int s = static_cast<int>(a.size());
  fp.p = Vec(n);
  fp.jacobian_xi = Mat(n, s);
  for (int k = 0; k < n; ++k) {
    fp.p[k] = xi[k].v;
    fp.jacobian_xi.row(k) = xi[k].g.transpose();
  }
  for (const JetField& e : E) fp.E.push_back(e.values());
  for (const JetField& nb : N) fp.N.push_back(nb.values());
  fp.nstar_unit = nstar_unit.values();
  return fp;
}

FrameJets frame_jets(const CauchyProblem& problem, const Vec& a) {
  const Dims& d = problem.dims;
  const int n = d.ambient();
  if (a.size() != d.s) throw DimensionMismatch("frame_jets: chart point has wrong dimension");
  // a collar of a few stencil widths admits finite differences at the box edge
  const double collar = 4.0 * std::max(problem.tol.fd_step1, problem.tol.fd_step2);
  for (int i = 0; i < d.s; ++i)
    if (a[i] < problem.domain[i][0] - collar || a[i] > problem.domain[i][1] + collar)
      throw OutsideDomain("frame_jets: chart point outside domain box");

  FrameJets fj;
  fj.a = a;
  fj.xi.reserve(n);
  for (const ExprAst& e : problem.xi) fj.xi.push_back(eval_jet2(e, a));

  // D-generators in frame order: chart tangents first, then the extras
  std::vector<JetField> generators;
  generators.reserve(d.m);
  for (int i = 0; i < d.s; ++i) {
    JetField t;
    t.c.reserve(n);
    for (int k = 0; k < n; ++k) t.c.push_back(Jet1(fj.xi[k].g[i], fj.xi[k].h.row(i).transpose()));
    generators.push_back(std::move(t));
  }
  for (const auto& extra : problem.d_extra) generators.push_back(eval_field(extra, a));

  for (int i = 0; i < d.m; ++i) {
    JetField w = generators[i];
    orthogonalize_against(w, fj.E);
    if (value_norm(w) < problem.tol.ortho_drop) {
      if (i < d.s)
        throw ImmersionFailure("chart Jacobian drops rank at the sampled point");
      throw DistributionRankFailure("distribution generators have rank < m at the sampled point");
    }
    fj.E.push_back(normalized(w));
  }

  // normal frame: residuals of the standard basis against span(E), kept in
  // ascending index order
  for (int k = 0; k < n && static_cast<int>(fj.N.size()) < d.c; ++k) {
    JetField r;
    r.c.assign(n, Jet1::constant(0.0, d.s));
    r.c[k] = Jet1::constant(1.0, d.s);
    orthogonalize_against(r, fj.E);
    orthogonalize_against(r, fj.N);
    if (value_norm(r) < problem.tol.frame_keep) continue;
    fj.N.push_back(normalized(r));
  }
  if (static_cast<int>(fj.N.size()) < d.c)
    throw DistributionRankFailure("normal frame construction found fewer than c directions");

  fj.nstar_unit = unit_normal_section(fj, problem.nstar, a);
  return fj;
}

JetField unit_normal_section(const FrameJets& frame, const std::vector<ExprAst>& section,
                             const Vec& a) {
  const int n = static_cast<int>(frame.xi.size());
  const int s = static_cast<int>(a.size());
  JetField raw = eval_field(section, a);
  if (static_cast<int>(raw.c.size()) != n)
    throw DimensionMismatch("normal section has wrong number of components");
  JetField proj;
  proj.c.assign(n, Jet1::constant(0.0, s));
  for (const JetField& nb : frame.N) {
    Jet1 coeff = dot(nb, raw);
    for (int k = 0; k < n; ++k) proj.c[k] = proj.c[k] + coeff * nb.c[k];
  }
  if (value_norm(proj) < kNstarVanishTol)
    throw NormalSectionVanishes("projection of the normal section onto D-perp vanishes");
  return normalized(proj);
}

AdaptedFramePoint adapted_frame(const CauchyProblem& problem, const Vec& a) {
  return frame_jets(problem, a).point();
}

}  // namespace gcp
