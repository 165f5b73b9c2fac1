// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gcp/expr.hpp"
#include "gcp/jet.hpp"
#include "gcp/linalg.hpp"
#include "gcp/types.hpp"

namespace gcp {

struct OutsideDomain : Error {
  using Error::Error;
};

/// Cauchy data (S, D, N*) in symbolic form. S is the image of the chart xi
/// over the domain box; D is spanned by TS together with the d_extra fields;
/// nstar is an ambient field whose projection onto the orthogonal complement
/// of D is the prescribed normal section.
struct CauchyProblem {
  Dims dims;
  std::vector<ExprAst> xi;                    // m+c components
  std::vector<std::vector<ExprAst>> d_extra;  // (m-s) generators, m+c each
  std::vector<ExprAst> nstar;                 // m+c
  std::optional<std::vector<ExprAst>> nstar_alt;
  std::vector<std::array<double, 2>> domain;  // s closed intervals
  Tolerances tol;
  int grid_points = 17;
  std::optional<double> bmax_override;

  bool contains(const Vec& a) const {
    for (int i = 0; i < dims.s; ++i)
      if (a[i] < domain[i][0] || a[i] > domain[i][1]) return false;
    return true;
  }
};

/// Orthonormal frame (E_1..E_m, N_1..N_c) at a chart point: E spans D with
/// E_1..E_s spanning TS, N spans the orthogonal complement of D, and
/// nstar_unit is the unit projection of the nstar field into span(N).
struct AdaptedFramePoint {
  Vec a;
  Vec p;
  std::vector<Vec> E;
  std::vector<Vec> N;
  Vec nstar_unit;
  Mat jacobian_xi;  // (m+c) x s
};

/// First-order jet of an ambient vector field along the chart.
struct JetField {
  std::vector<Jet1> c;

  Vec values() const {
    Vec v(static_cast<int>(c.size()));
    for (std::size_t k = 0; k < c.size(); ++k) v[static_cast<int>(k)] = c[k].v;
    return v;
  }
  /// derivative of the field in chart direction q
  Vec partial(int q) const {
    Vec v(static_cast<int>(c.size()));
    for (std::size_t k = 0; k < c.size(); ++k) v[static_cast<int>(k)] = c[k].g[q];
    return v;
  }
};

/// Adapted frame together with first derivatives of every frame field, and
/// second-order jets of the chart itself.
struct FrameJets {
  Vec a;
  std::vector<Jet2> xi;      // m+c second-order jets of the chart
  std::vector<JetField> E;   // m
  std::vector<JetField> N;   // c
  JetField nstar_unit;

  AdaptedFramePoint point() const;
};

/// Frame construction at a chart point, differentiated along the chart.
/// Throws ImmersionFailure / DistributionRankFailure / NormalSectionVanishes
/// when the Cauchy-data invariants fail at `a`.
FrameJets frame_jets(const CauchyProblem& problem, const Vec& a);

AdaptedFramePoint adapted_frame(const CauchyProblem& problem, const Vec& a);

/// Unit projection of an arbitrary ambient section onto span(N), with first
/// derivatives. Used for the prescribed section and for alternates.
JetField unit_normal_section(const FrameJets& frame, const std::vector<ExprAst>& section,
                             const Vec& a);

}  // namespace gcp
