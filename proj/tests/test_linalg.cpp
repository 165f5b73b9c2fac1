// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "gcp/linalg.hpp"

using gcp::Mat;
using gcp::Subspace;
using gcp::Vec;

namespace {

Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Vec random_vec(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

double gram_det(const std::vector<Vec>& vs) {
  const int k = static_cast<int>(vs.size());
  Mat g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = vs[i].dot(vs[j]);
  return gcp::determinant(g);
}

}  // namespace

TEST_CASE("orthonormalize: axis-aligned pair") {
  auto [sub, rank] = gcp::orthonormalize({make_vec({1, 0, 0}), make_vec({0, 2, 0})}, 1e-10);
  CHECK(rank == 2);
  CHECK(sub.basis.col(0).isApprox(make_vec({1, 0, 0})));
  CHECK(sub.basis.col(1).isApprox(make_vec({0, 1, 0})));
}

TEST_CASE("orthonormalize: dependent pair keeps the earlier vector") {
  auto [sub, rank] = gcp::orthonormalize({make_vec({1, 0, 0}), make_vec({2, 0, 0})}, 1e-10);
  CHECK(rank == 1);
  CHECK(sub.basis.col(0).isApprox(make_vec({1, 0, 0})));
}

TEST_CASE("orthonormalize: empty input") {
  auto [sub, rank] = gcp::orthonormalize({}, 1e-10);
  CHECK(rank == 0);
  CHECK(sub.dim() == 0);
}

TEST_CASE("orthonormalize: rank agrees with SVD on duplicated random input") {
  std::mt19937 rng(20240905);
  std::vector<Vec> vs;
  for (int i = 0; i < 4; ++i) vs.push_back(random_vec(rng, 7));
  vs.push_back(vs[1]);  // exact duplicate
  auto [sub, rank] = gcp::orthonormalize(vs, 1e-10);
  Mat stacked(7, 5);
  for (int j = 0; j < 5; ++j) stacked.col(j) = vs[j];
  CHECK(rank == 4);
  CHECK(rank == gcp::numerical_rank(stacked, 1e-10));
  // orthonormality within 1e-12
  Mat gram = sub.basis.transpose() * sub.basis;
  CHECK((gram - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("orthonormalize + project reproduces inputs (span preservation)") {
  std::mt19937 rng(7);
  std::vector<Vec> vs;
  for (int i = 0; i < 3; ++i) vs.push_back(random_vec(rng, 6));
  auto [sub, rank] = gcp::orthonormalize(vs, 1e-10);
  REQUIRE(rank == 3);
  for (const Vec& v : vs) CHECK((gcp::project(sub, v) - v).norm() < 1e-10);
}

TEST_CASE("numerical_rank basics") {
  CHECK(gcp::numerical_rank(Mat::Identity(3, 3), 1e-10) == 3);
  CHECK(gcp::numerical_rank(Mat::Zero(4, 2), 1e-10) == 0);

  std::mt19937 rng(42);
  Vec a = random_vec(rng, 5), b = random_vec(rng, 5);
  Vec c = random_vec(rng, 5), d = random_vec(rng, 5);
  Mat m = a * b.transpose() + c * d.transpose();
  CHECK(gcp::numerical_rank(m, 1e-10) == 2);
}

TEST_CASE("numerical_rank is invariant under permutation and orthogonal maps") {
  std::mt19937 rng(99);
  Mat m(5, 4);
  for (int i = 0; i < 5; ++i) m.row(i) = random_vec(rng, 4).transpose();
  m.col(3) = m.col(0) + m.col(1);  // force rank 3
  const int r = gcp::numerical_rank(m, 1e-9);
  CHECK(r == 3);

  Mat perm = m;
  perm.row(0).swap(perm.row(4));
  perm.col(1).swap(perm.col(2));
  CHECK(gcp::numerical_rank(perm, 1e-9) == r);

  // random orthogonal factor from QR of a random matrix
  Mat q = Eigen::HouseholderQR<Mat>(Mat::Random(5, 5)).householderQ();
  Eigen::JacobiSVD<Mat> before(m), after(Mat(q * m));
  CHECK(gcp::numerical_rank(q * m, 1e-9) == r);
  for (int i = 0; i < 4; ++i) {
    const double s0 = before.singularValues()[i];
    const double s1 = after.singularValues()[i];
    CHECK(std::abs(s0 - s1) <= 1e-10 * std::max(1.0, before.singularValues()[0]));
  }
}

TEST_CASE("cross_product: coordinate cases") {
  Vec e12 = gcp::cross_product({make_vec({1, 0, 0}), make_vec({0, 1, 0})});
  CHECK(e12.isApprox(make_vec({0, 0, 1})));

  Vec e123 = gcp::cross_product(
      {make_vec({1, 0, 0, 0}), make_vec({0, 1, 0, 0}), make_vec({0, 0, 1, 0})});
  CHECK(e123.isApprox(make_vec({0, 0, 0, 1})));
}

TEST_CASE("cross_product: orthogonality, Gram norm, orientation in R^5") {
  std::mt19937 rng(123);
  std::vector<Vec> vs;
  for (int i = 0; i < 4; ++i) vs.push_back(random_vec(rng, 5));
  Vec w = gcp::cross_product(vs);
  for (const Vec& v : vs) CHECK(std::abs(w.dot(v)) < 1e-10);
  CHECK(w.squaredNorm() == doctest::Approx(gram_det(vs)).epsilon(1e-10));

  Mat full(5, 5);
  for (int i = 0; i < 4; ++i) full.row(i) = vs[i].transpose();
  full.row(4) = w.transpose();
  CHECK(gcp::determinant(full) > 0);
}

TEST_CASE("cross_product is alternating: swap flips the sign exactly") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 3 + trial % 4;
    std::vector<Vec> vs;
    for (int i = 0; i < m - 1; ++i) vs.push_back(random_vec(rng, m));
    Vec w = gcp::cross_product(vs);
    std::swap(vs[0], vs[m - 2]);
    Vec ws = gcp::cross_product(vs);
    CHECK((w + ws).cwiseAbs().maxCoeff() == 0.0);  // exact
  }
}

TEST_CASE("cross_product: duplicated argument gives the zero vector") {
  std::mt19937 rng(6);
  std::vector<Vec> vs;
  for (int i = 0; i < 3; ++i) vs.push_back(random_vec(rng, 4));
  vs[2] = vs[0];
  CHECK(gcp::cross_product(vs).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cross_product: dependent inputs give (near) zero") {
  std::mt19937 rng(8);
  Vec a = random_vec(rng, 4), b = random_vec(rng, 4);
  Vec c = 2.0 * a - 3.0 * b;
  CHECK(gcp::cross_product({a, b, c}).norm() < 1e-12);
}

TEST_CASE("cross_product: minors and SVD routes agree") {
  std::mt19937 rng(31);
  for (int m = 4; m <= 10; ++m) {
    std::vector<Vec> vs;
    for (int i = 0; i < m - 1; ++i) vs.push_back(random_vec(rng, m));
    Vec a = gcp::cross_product_minors(vs);
    Vec b = gcp::cross_product_svd(vs);
    CHECK((a - b).norm() < 1e-10 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("cross_product: multilinearity in the first slot") {
  std::mt19937 rng(77);
  std::vector<Vec> vs;
  for (int i = 0; i < 4; ++i) vs.push_back(random_vec(rng, 5));
  auto scaled = vs;
  scaled[0] = 2.5 * vs[0];
  Vec w = gcp::cross_product(vs);
  Vec w2 = gcp::cross_product(scaled);
  CHECK((w2 - 2.5 * w).norm() < 1e-12 * w.norm());
}

TEST_CASE("principal_angles") {
  auto [u, ru] = gcp::orthonormalize({make_vec({1, 0, 0}), make_vec({0, 1, 0})}, 1e-12);
  auto angles = gcp::principal_angles(u, u);
  REQUIRE(angles.size() == 2);
  CHECK(angles[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(angles[1] == doctest::Approx(0.0).epsilon(1e-12));

  auto [e1, r1] = gcp::orthonormalize({make_vec({1, 0, 0})}, 1e-12);
  auto [e2, r2] = gcp::orthonormalize({make_vec({0, 1, 0})}, 1e-12);
  auto right = gcp::principal_angles(e1, e2);
  REQUIRE(right.size() == 1);
  CHECK(right[0] == doctest::Approx(std::acos(0.0)).epsilon(1e-12));

  const double t = 0.3;
  auto [rot, rr] = gcp::orthonormalize({make_vec({std::cos(t), std::sin(t), 0})}, 1e-12);
  auto tilted = gcp::principal_angles(e1, rot);
  REQUIRE(tilted.size() == 1);
  CHECK(tilted[0] == doctest::Approx(t).epsilon(1e-10));
}

TEST_CASE("principal_angles: ambient mismatch throws") {
  auto [u, ru] = gcp::orthonormalize({make_vec({1, 0, 0})}, 1e-12);
  auto [v, rv] = gcp::orthonormalize({make_vec({1, 0, 0, 0})}, 1e-12);
  CHECK_THROWS_AS((void)gcp::principal_angles(u, v), gcp::DimensionMismatch);
}

TEST_CASE("project") {
  auto [u, r] = gcp::orthonormalize({make_vec({1, 0, 0}), make_vec({0, 1, 0})}, 1e-12);
  CHECK(gcp::project(u, make_vec({3, 4, 5})).isApprox(make_vec({3, 4, 0})));
  CHECK(gcp::project(u, u.basis.col(0)).isApprox(u.basis.col(0)));

  std::mt19937 rng(11);
  std::vector<Vec> vs;
  for (int i = 0; i < 3; ++i) vs.push_back(random_vec(rng, 6));
  auto [w, rw] = gcp::orthonormalize(vs, 1e-12);
  Vec v = random_vec(rng, 6);
  Vec residual = v - gcp::project(w, v);
  for (int j = 0; j < w.dim(); ++j) CHECK(std::abs(residual.dot(w.basis.col(j))) < 1e-12);
  // idempotent
  CHECK((gcp::project(w, gcp::project(w, v)) - gcp::project(w, v)).norm() < 1e-12);
}
