// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace gcp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Dimension triple fixing the whole problem: S is s-dimensional, the
/// distribution D has rank m, and the ambient space is R^{m+c}.
struct Dims {
  int s = 1;
  int m = 2;
  int c = 1;

  Dims() = default;
  Dims(int s_, int m_, int c_) : s(s_), m(m_), c(c_) {
    if (s < 1 || m <= s || c < 1)
      throw std::invalid_argument("dims: need 1 <= s < m and c >= 1, got s=" + std::to_string(s) +
                                  " m=" + std::to_string(m) + " c=" + std::to_string(c));
  }

  int ambient() const { return m + c; }
  int fiber() const { return m - s; }

  bool operator==(const Dims&) const = default;
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cauchy-data validation failures.
struct ImmersionFailure : Error {
  using Error::Error;
};
struct DistributionRankFailure : Error {
  using Error::Error;
};
struct NormalSectionVanishes : Error {
  using Error::Error;
};

// Ruling-construction failures.
struct DegenerateRuling : Error {
  using Error::Error;
};
struct WrongFiberDimension : Error {
  int actual;
  WrongFiberDimension(int actual_, int expected)
      : Error("fiber nullspace has dimension " + std::to_string(actual_) + ", expected " +
              std::to_string(expected)),
        actual(actual_) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// All numeric knobs in one place. Defaults are what the CLI and the
/// certification pipeline use unless a problem file overrides them.
struct Tolerances {
  double rank = 1e-9;           // relative singular-value cutoff for rank decisions
  double hypothesis = 1e-7;     // nonsingularity / solvability checks
  double ortho_drop = 1e-10;    // Gram-Schmidt drop threshold (residual norm)
  double frame_keep = 1e-8;     // keep threshold for normal-frame residuals
  double fd_step1 = 1e-4;       // stencil for first derivatives of ruling fields
  double fd_step2 = 1e-3;       // stencil for second derivatives of ruling fields
  double nullity_rank = 1e-4;   // relative cutoff when ranking the second form
  double tangency_b0 = 1e-7;    // max principal angle between TM|_S and D
  double constant_tangent = 1e-6;
  double gap_ratio = 1e-6;      // max_null_sv / min_nonzero_sv
  double shape_transport = 1e-6;
  double uniqueness_angle = 1e-8;
};

}  // namespace gcp
