// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "gcp/types.hpp"

namespace gcp {

/// Second-order jet: value, gradient and Hessian with respect to the s chart
/// parameters. The Hessian stays bitwise symmetric because every update rule
/// below is written symmetrically.
struct Jet2 {
  double v = 0.0;
  Vec g;
  Mat h;

  Jet2() = default;
  Jet2(double value, Vec grad, Mat hess) : v(value), g(std::move(grad)), h(std::move(hess)) {}

  static Jet2 constant(double value, int s) { return {value, Vec::Zero(s), Mat::Zero(s, s)}; }
  static Jet2 variable(double value, int s, int index) {
    Jet2 j = constant(value, s);
    j.g[index] = 1.0;
    return j;
  }

  int dim() const { return static_cast<int>(g.size()); }
};

// value f(u), chain rule with df = f'(u.v), ddf = f''(u.v).
// The outer product is materialized before scaling; folding the scalar into
// one factor would break bitwise Hessian symmetry.
inline Jet2 chain(const Jet2& u, double f, double df, double ddf) {
  Mat outer = u.g * u.g.transpose();
  return {f, df * u.g, Mat(df * u.h + ddf * outer)};
}

inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.g, -a.h}; }

inline Jet2 operator+(const Jet2& a, const Jet2& b) { return {a.v + b.v, a.g + b.g, a.h + b.h}; }
inline Jet2 operator-(const Jet2& a, const Jet2& b) { return {a.v - b.v, a.g - b.g, a.h - b.h}; }

// (outer + outer^T) in a single rounding per entry keeps Hessians bitwise
// symmetric.
inline Mat sym_outer(const Vec& x, const Vec& y) {
  Mat outer = x * y.transpose();
  return outer + outer.transpose();
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Mat h = a.v * b.h + b.v * a.h + sym_outer(a.g, b.g);
  return {a.v * b.v, Vec(a.v * b.g + b.v * a.g), std::move(h)};
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
  const double q = a.v / b.v;
  Vec qg = (a.g - q * b.g) / b.v;
  Mat qh = (a.h - q * b.h - sym_outer(qg, b.g)) / b.v;
  return {q, std::move(qg), std::move(qh)};
}

inline Jet2 operator+(const Jet2& a, double c) { return {a.v + c, a.g, a.h}; }
inline Jet2 operator+(double c, const Jet2& a) { return a + c; }
inline Jet2 operator-(const Jet2& a, double c) { return {a.v - c, a.g, a.h}; }
inline Jet2 operator-(double c, const Jet2& a) { return {c - a.v, -a.g, -a.h}; }
inline Jet2 operator*(const Jet2& a, double c) { return {a.v * c, c * a.g, c * a.h}; }
inline Jet2 operator*(double c, const Jet2& a) { return a * c; }
inline Jet2 operator/(const Jet2& a, double c) { return {a.v / c, a.g / c, a.h / c}; }

inline Jet2 sin(const Jet2& u) { return chain(u, std::sin(u.v), std::cos(u.v), -std::sin(u.v)); }
inline Jet2 cos(const Jet2& u) { return chain(u, std::cos(u.v), -std::sin(u.v), -std::cos(u.v)); }
inline Jet2 tan(const Jet2& u) {
  const double t = std::tan(u.v);
  const double d = 1.0 + t * t;
  return chain(u, t, d, 2.0 * t * d);
}
inline Jet2 exp(const Jet2& u) {
  const double e = std::exp(u.v);
  return chain(u, e, e, e);
}
inline Jet2 log(const Jet2& u) { return chain(u, std::log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v)); }
inline Jet2 sqrt(const Jet2& u) {
  const double r = std::sqrt(u.v);
  return chain(u, r, 0.5 / r, -0.25 / (r * u.v));
}
inline Jet2 powi(const Jet2& u, int n) {
  if (n == 0) return Jet2::constant(1.0, u.dim());
  if (n == 1) return u;
  const double f = std::pow(u.v, n);
  const double df = n * std::pow(u.v, n - 1);
  const double ddf = double(n) * (n - 1) * std::pow(u.v, n - 2);
  return chain(u, f, df, ddf);
}

/// First-order jet, used where only gradients are needed (frame fields along
/// the chart, whose second derivatives are never consumed).
struct Jet1 {
  double v = 0.0;
  Vec g;

  Jet1() = default;
  Jet1(double value, Vec grad) : v(value), g(std::move(grad)) {}
  explicit Jet1(const Jet2& j) : v(j.v), g(j.g) {}

  static Jet1 constant(double value, int s) { return {value, Vec::Zero(s)}; }
};

inline Jet1 operator-(const Jet1& a) { return {-a.v, -a.g}; }
inline Jet1 operator+(const Jet1& a, const Jet1& b) { return {a.v + b.v, a.g + b.g}; }
inline Jet1 operator-(const Jet1& a, const Jet1& b) { return {a.v - b.v, a.g - b.g}; }
inline Jet1 operator*(const Jet1& a, const Jet1& b) {
  return {a.v * b.v, Vec(a.v * b.g + b.v * a.g)};
}
inline Jet1 operator/(const Jet1& a, const Jet1& b) {
  const double q = a.v / b.v;
  return {q, Vec((a.g - q * b.g) / b.v)};
}
inline Jet1 operator*(const Jet1& a, double c) { return {a.v * c, c * a.g}; }
inline Jet1 operator*(double c, const Jet1& a) { return a * c; }
inline Jet1 operator/(const Jet1& a, double c) { return {a.v / c, a.g / c}; }
inline Jet1 sqrt(const Jet1& u) {
  const double r = std::sqrt(u.v);
  return {r, Vec(u.g * (0.5 / r))};
}

}  // namespace gcp
