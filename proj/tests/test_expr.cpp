// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "gcp/expr.hpp"
#include "support.hpp"

using gcp::ExprAst;
using gcp::Jet2;
using gcp::NodeKind;
using gcp::Vec;
using testsupport::close_rel;

namespace {
Vec pt1(double x) {
  Vec v(1);
  v[0] = x;
  return v;
}
Vec pt2(double x, double y) {
  Vec v(2);
  v[0] = x;
  v[1] = y;
  return v;
}
}  // namespace

TEST_CASE("parse: precedence puts '+' at the root") {
  ExprAst ast = gcp::parse("cos(a1)*2 + a2^3", 2);
  CHECK(ast.root_node().kind == NodeKind::Add);
  CHECK(gcp::print(ast) == "cos(a1)*2 + a2^3");
}

TEST_CASE("parse: parameter out of range") {
  CHECK_THROWS_WITH_AS((void)gcp::parse("a3", 2), doctest::Contains("out of range"),
                       gcp::ParseError);
}

TEST_CASE("parse: unterminated call reports offset 7") {
  try {
    (void)gcp::parse("sin(a1", 1);
    FAIL("expected ParseError");
  } catch (const gcp::ParseError& e) {
    CHECK(e.offset == 7);
  }
}

TEST_CASE("parse: unknown identifier") {
  CHECK_THROWS_AS((void)gcp::parse("sinh(a1)", 1), gcp::ParseError);
}

TEST_CASE("parse: exponent must be an integer constant") {
  CHECK_THROWS_AS((void)gcp::parse("a1^a1", 1), gcp::ParseError);
  CHECK_THROWS_AS((void)gcp::parse("a1^2.5", 1), gcp::ParseError);
  CHECK_NOTHROW((void)gcp::parse("a1^-2", 1));
}

TEST_CASE("unary minus binds between '^' and '*'") {
  // -a1^2 is -(a1^2)
  ExprAst ast = gcp::parse("-a1^2", 1);
  CHECK(ast.root_node().kind == NodeKind::Neg);
  CHECK(gcp::eval_value(ast, pt1(3.0)) == -9.0);
  // -a1*a2 is (-a1)*a2
  ExprAst m = gcp::parse("-a1*a2", 2);
  CHECK(m.root_node().kind == NodeKind::Mul);
}

TEST_CASE("eval_jet2: sin at 0") {
  ExprAst ast = gcp::parse("sin(a1)", 1);
  Jet2 j = gcp::eval_jet2(ast, pt1(0.0));
  CHECK(j.v == 0.0);
  CHECK(j.g[0] == 1.0);
  CHECK(j.h(0, 0) == 0.0);
}

TEST_CASE("eval_jet2: product a1*a2") {
  ExprAst ast = gcp::parse("a1*a2", 2);
  Jet2 j = gcp::eval_jet2(ast, pt2(2.0, 3.0));
  CHECK(j.v == 6.0);
  CHECK(j.g[0] == 3.0);
  CHECK(j.g[1] == 2.0);
  CHECK(j.h(0, 0) == 0.0);
  CHECK(j.h(0, 1) == 1.0);
  CHECK(j.h(1, 0) == 1.0);
  CHECK(j.h(1, 1) == 0.0);
}

TEST_CASE("eval_jet2: exp(a1^2) matches finite differences") {
  ExprAst ast = gcp::parse("exp(a1^2)", 1);
  Jet2 j = gcp::eval_jet2(ast, pt1(0.7));
  const double fd_g = testsupport::fd_partial(ast, pt1(0.7), 0, 1e-5);
  const double fd_h = testsupport::fd_second(ast, pt1(0.7), 0, 0, 1e-5);
  CHECK(close_rel(j.g[0], fd_g, 1e-6));
  CHECK(close_rel(j.h(0, 0), fd_h, 1e-6));
}

TEST_CASE("eval domain errors name the offending subexpression") {
  ExprAst ast = gcp::parse("1 + log(a1)", 1);
  try {
    (void)gcp::eval_jet2(ast, pt1(-1.0));
    FAIL("expected EvalDomainError");
  } catch (const gcp::EvalDomainError& e) {
    CHECK(e.subexpr == "log(a1)");
    CHECK(e.offset == 5);
  }
  ExprAst div = gcp::parse("a1/(a1 - 1)", 1);
  CHECK_THROWS_AS((void)gcp::eval_value(div, pt1(1.0)), gcp::EvalDomainError);
  ExprAst pw = gcp::parse("a1^-1", 1);
  CHECK_THROWS_AS((void)gcp::eval_jet2(pw, pt1(0.0)), gcp::EvalDomainError);
  CHECK(gcp::eval_value(pw, pt1(4.0)) == 0.25);
}

TEST_CASE("jet Hessian is symmetric bitwise") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const int s = 1 + trial % 3;
    ExprAst ast = gcp::parse(testsupport::random_expr(rng, s, 3), s);
    Vec p(s);
    std::uniform_real_distribution<double> dist(-0.8, 0.8);
    for (int i = 0; i < s; ++i) p[i] = dist(rng);
    Jet2 j = gcp::eval_jet2(ast, p);
    for (int i = 0; i < s; ++i)
      for (int k = 0; k < s; ++k) CHECK(j.h(i, k) == j.h(k, i));
  }
}

TEST_CASE("100 random expressions: jets match finite differences") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> dist(-0.9, 0.9);
  int done = 0;
  while (done < 100) {
    const int s = 1 + done % 3;
    const std::string src = testsupport::random_expr(rng, s, 3);
    ExprAst ast = gcp::parse(src, s);
    Vec p(s);
    for (int i = 0; i < s; ++i) p[i] = dist(rng);
    Jet2 j;
    try {
      j = gcp::eval_jet2(ast, p);
    } catch (const gcp::EvalDomainError&) {
      continue;  // regenerate
    }
    if (std::abs(j.v) > 1e4) continue;
    bool ok = true;
    // gradient step 1e-5; Hessian step 2e-4 keeps the FD oracle above its
    // own roundoff floor
    for (int i = 0; i < s && ok; ++i)
      ok = close_rel(j.g[i], testsupport::fd_partial(ast, p, i, 1e-5), 1e-6);
    for (int i = 0; i < s && ok; ++i)
      for (int k = 0; k < s && ok; ++k)
        ok = close_rel(j.h(i, k), testsupport::fd_second(ast, p, i, k, 2e-4), 1e-6);
    CAPTURE(src);
    CHECK(ok);
    ++done;
  }
}

TEST_CASE("parse-print-parse is the identity on trees") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = 1 + trial % 3;
    ExprAst first = gcp::parse(testsupport::random_expr(rng, s, 4), s);
    ExprAst second = gcp::parse(gcp::print(first), s);
    CHECK(gcp::ast_equal(first, second));
    CHECK(gcp::print(first) == gcp::print(second));
  }
  // hand-picked shapes where parenthesization matters
  for (const char* src : {"-(a1*a2)", "a1 - (a2 - 1)", "(a1 + a2)^3", "(-a1)^2", "a1/(a2/a1)",
                          "-(a1 + a2)", "a1^2^3", "2/(a1*a2)"}) {
    ExprAst first = gcp::parse(src, 2);
    ExprAst second = gcp::parse(gcp::print(first), 2);
    CHECK(gcp::ast_equal(first, second));
  }
}
