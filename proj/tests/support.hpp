// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <random>
#include <string>

#include "gcp/expr.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
  return std::string(GCP_FIXTURE_DIR) + "/" + name;
}

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Random expression source of bounded depth over a1..as. Arguments of log,
// sqrt and division are kept positive by construction; magnitudes are tamed
// so finite differences stay meaningful.
inline std::string random_expr(std::mt19937& rng, int s, int depth) {
  std::uniform_real_distribution<double> coef(0.3, 2.0);
  std::uniform_int_distribution<int> pick_leaf(0, 2);
  if (depth <= 0) {
    if (pick_leaf(rng) == 0) return fmt(coef(rng));
    std::uniform_int_distribution<int> p(1, s);
    return "a" + std::to_string(p(rng));
  }
  std::uniform_int_distribution<int> pick_op(0, 8);
  const auto sub = [&](int d) { return random_expr(rng, s, d); };
  switch (pick_op(rng)) {
    case 0: return "(" + sub(depth - 1) + " + " + sub(depth - 1) + ")";
    case 1: return "(" + sub(depth - 1) + " - " + sub(depth - 1) + ")";
    case 2: return "(" + sub(depth - 1) + ")*(" + sub(depth - 1) + ")";
    case 3: return "(" + sub(depth - 1) + ")/(" + fmt(coef(rng) + 1.0) + " + (" + sub(depth - 1) + ")^2)";
    case 4: return "sin(" + sub(depth - 1) + ")";
    case 5: return "cos(" + sub(depth - 1) + ")";
    case 6: return "exp((" + sub(depth - 1) + ")*0.2)";
    case 7: return "log(" + fmt(coef(rng) + 0.5) + " + (" + sub(depth - 1) + ")^2)";
    default: return "sqrt(" + fmt(coef(rng) + 0.5) + " + (" + sub(depth - 1) + ")^2)";
  }
}

inline double fd_partial(const gcp::ExprAst& ast, gcp::Vec point, int i, double h) {
  point[i] += h;
  const double fp = gcp::eval_value(ast, point);
  point[i] -= 2 * h;
  const double fm = gcp::eval_value(ast, point);
  return (fp - fm) / (2 * h);
}

inline double fd_second(const gcp::ExprAst& ast, gcp::Vec point, int i, int j, double h) {
  if (i == j) {
    const double f0 = gcp::eval_value(ast, point);
    point[i] += h;
    const double fp = gcp::eval_value(ast, point);
    point[i] -= 2 * h;
    const double fm = gcp::eval_value(ast, point);
    return (fp - 2 * f0 + fm) / (h * h);
  }
  gcp::Vec p = point;
  p[i] += h; p[j] += h;
  const double fpp = gcp::eval_value(ast, p);
  p[j] -= 2 * h;
  const double fpm = gcp::eval_value(ast, p);
  p[i] -= 2 * h;
  const double fmm = gcp::eval_value(ast, p);
  p[j] += 2 * h;
  const double fmp = gcp::eval_value(ast, p);
  return (fpp - fpm - fmp + fmm) / (4 * h * h);
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testsupport

#include "gcp/cauchy.hpp"

namespace testsupport {

inline std::vector<gcp::ExprAst> parse_all(std::initializer_list<const char*> exprs, int s) {
  std::vector<gcp::ExprAst> out;
  for (const char* e : exprs) out.push_back(gcp::parse(e, s));
  return out;
}

// Circular cylinder x^2 + y^2 = 1 through the unit circle, vertical rulings.
// Domain stays clear of the points where the index-ordered normal frame
// degenerates (cos a1 = 0).
inline gcp::CauchyProblem cylinder_problem() {
  gcp::CauchyProblem p;
  p.dims = gcp::Dims(1, 2, 1);
  p.xi = parse_all({"cos(a1)", "sin(a1)", "0"}, 1);
  p.d_extra.push_back(parse_all({"0", "0", "1"}, 1));
  p.nstar = parse_all({"cos(a1)", "sin(a1)", "0"}, 1);
  p.domain = {{-1.0, 1.0}};
  return p;
}

// Flat data: S a line inside a plane, D the plane, N* its constant normal.
// The shape operator vanishes identically.
inline gcp::CauchyProblem plane_problem() {
  gcp::CauchyProblem p;
  p.dims = gcp::Dims(1, 2, 1);
  p.xi = parse_all({"a1", "0", "0"}, 1);
  p.d_extra.push_back(parse_all({"0", "1", "0"}, 1));
  p.nstar = parse_all({"0", "0", "1"}, 1);
  p.domain = {{0.0, 1.0}};
  return p;
}

// Latitude circle on the unit sphere with D the sphere's tangent planes and
// N* the outward radial field; the solution is the tangent cone along the
// circle. Shape operator of the unit sphere is the identity.
inline gcp::CauchyProblem sphere_latitude_problem() {
  gcp::CauchyProblem p;
  p.dims = gcp::Dims(1, 2, 1);
  p.xi = parse_all({"cos(a1)*cos(0.4)", "sin(a1)*cos(0.4)", "sin(0.4)"}, 1);
  p.d_extra.push_back(
      parse_all({"-cos(a1)*sin(0.4)", "-sin(a1)*sin(0.4)", "cos(0.4)"}, 1));
  p.nstar = parse_all({"cos(a1)*cos(0.4)", "sin(a1)*cos(0.4)", "sin(0.4)"}, 1);
  p.domain = {{-1.0, 1.0}};
  return p;
}

// Tangent developable of the helix (cos t, sin t, t/2), with S the offset
// curve gamma + gamma' (off the edge of regression), D the osculating
// planes, N* the binormal.
inline gcp::CauchyProblem helix_tangentdev_problem() {
  gcp::CauchyProblem p;
  p.dims = gcp::Dims(1, 2, 1);
  p.xi = parse_all({"cos(a1) - sin(a1)", "sin(a1) + cos(a1)", "0.5*a1 + 0.5"}, 1);
  p.d_extra.push_back(parse_all({"-sin(a1)", "cos(a1)", "0.5"}, 1));
  p.nstar = parse_all({"0.5*sin(a1)", "-0.5*cos(a1)", "1"}, 1);
  p.domain = {{0.3, 2.8}};
  return p;
}

// Cone tangent data: unit circle at height 1, D the cone's tangent planes,
// rulings run toward the apex at the origin.
inline gcp::CauchyProblem cone_problem() {
  gcp::CauchyProblem p;
  p.dims = gcp::Dims(1, 2, 1);
  p.xi = parse_all({"cos(a1)", "sin(a1)", "1"}, 1);
  p.d_extra.push_back(parse_all({"cos(a1)", "sin(a1)", "1"}, 1));
  p.nstar = parse_all({"cos(a1)", "sin(a1)", "-1"}, 1);
  p.domain = {{-1.0, 1.0}};
  return p;
}

// Circle in R^4 extended by a flat e3 direction; c = 2 with a second valid
// section for the uniqueness probe.
inline gcp::CauchyProblem circle_cyl_r4_problem() {
  gcp::CauchyProblem p;
  p.dims = gcp::Dims(1, 2, 2);
  p.xi = parse_all({"cos(a1)", "sin(a1)", "0", "0"}, 1);
  p.d_extra.push_back(parse_all({"0", "0", "1", "0"}, 1));
  p.nstar = parse_all({"cos(a1)", "sin(a1)", "0", "0"}, 1);
  p.nstar_alt = parse_all({"cos(a1)", "sin(a1)", "0", "1"}, 1);
  p.domain = {{-1.0, 1.0}};
  return p;
}

// Curve in R^5 where the image of phi is strictly larger than phi(TS, N*):
// a second normal direction rotates into D as a1 varies.
inline gcp::CauchyProblem solvability_fail_problem() {
  gcp::CauchyProblem p;
  p.dims = gcp::Dims(1, 3, 2);
  p.xi = parse_all({"cos(a1)", "sin(a1)", "0", "0", "0"}, 1);
  p.d_extra.push_back(parse_all({"0", "0", "-sin(a1)", "cos(a1)", "0"}, 1));
  p.d_extra.push_back(parse_all({"0", "0", "0", "0", "1"}, 1));
  p.nstar = parse_all({"cos(a1)", "sin(a1)", "0", "0", "0"}, 1);
  p.domain = {{0.0, 1.0}};
  return p;
}

// s = 2: sphere patch in R^4 extended by the flat e4 direction; the solution
// is the product of the sphere patch with a line (rank 2).
inline gcp::CauchyProblem sphere_cyl_s2_problem() {
  gcp::CauchyProblem p;
  p.dims = gcp::Dims(2, 3, 1);
  p.xi = parse_all({"cos(a1)*cos(a2)", "sin(a1)*cos(a2)", "sin(a2)", "0"}, 2);
  p.d_extra.push_back(parse_all({"0", "0", "0", "1"}, 2));
  p.nstar = parse_all({"cos(a1)*cos(a2)", "sin(a1)*cos(a2)", "sin(a2)", "0"}, 2);
  p.domain = {{-0.6, 0.6}, {-0.6, 0.6}};
  return p;
}

inline std::vector<gcp::CauchyProblem> certified_fixture_problems() {
  return {cylinder_problem(), sphere_latitude_problem(), helix_tangentdev_problem(),
          cone_problem(), circle_cyl_r4_problem(), sphere_cyl_s2_problem()};
}

// Random trig-polynomial expression in a1..as with coefficients small enough
// to keep frames well conditioned on a small domain box.
inline std::string random_field_expr(std::mt19937& rng, int s) {
  std::uniform_real_distribution<double> big(-0.9, 0.9);
  std::uniform_real_distribution<double> small(-0.35, 0.35);
  std::string out = fmt(big(rng));
  for (int i = 1; i <= s; ++i) {
    const std::string a = "a" + std::to_string(i);
    out += " + " + fmt(small(rng)) + "*" + a;
    out += " + " + fmt(small(rng)) + "*sin(" + a + ")";
    out += " + " + fmt(small(rng)) + "*cos(" + a + ")";
  }
  return out;
}

// Random hypersurface-type Cauchy data (c = 1). Hypotheses are not
// guaranteed; callers filter with the nonsingularity check.
inline gcp::CauchyProblem random_problem_c1(std::mt19937& rng, int s, int m) {
  gcp::CauchyProblem p;
  p.dims = gcp::Dims(s, m, 1);
  const int n = m + 1;
  for (int k = 0; k < n; ++k) p.xi.push_back(gcp::parse(random_field_expr(rng, s), s));
  for (int j = 0; j < m - s; ++j) {
    std::vector<gcp::ExprAst> field;
    for (int k = 0; k < n; ++k) field.push_back(gcp::parse(random_field_expr(rng, s), s));
    p.d_extra.push_back(std::move(field));
  }
  for (int k = 0; k < n; ++k) p.nstar.push_back(gcp::parse(random_field_expr(rng, s), s));
  p.domain.assign(s, {-0.25, 0.25});
  return p;
}

}  // namespace testsupport
