// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "specpoint/dini_quad.hpp"
#include "specpoint/interval_set.hpp"
#include "specpoint/map_spec.hpp"

namespace specpoint::dini {

/// Exact Dini derivatives from the provider registered on f. Throws
/// UnsupportedError when f has none; callers fall back to estimate().
DiniQuad exact(const MapSpec& f, double p);

struct EstimateOptions {
  double h0 = 0.1;
  double ratio = 0.6;  ///< in (0, 1)
  int steps = 60;      ///< at least 8
  /// Quotients beyond this magnitude count as divergence. Heuristic only.
  double divergence_threshold = 1e6;
  /// Sample the phases h = +-1/(pi/2 + k pi) when f declares an oscillation hint.
  bool use_oscillation_hint = true;
};

struct DiniEstimate {
  DiniQuad quad;
  /// Per component (same order as DiniQuad::components()): the value was
  /// declared infinite by the divergence rule.
  std::array<bool, 4> divergent{};
  /// Number of difference quotients that entered each side.
  std::size_t left_samples = 0;
  std::size_t right_samples = 0;
};

/// Numerical Dini derivatives of a 1-D map.
///
/// Difference quotients (f(p+h) - f(p))/h are taken on the geometric grid
/// h = +-h0 ratio^k, k = 0..steps-1, and only the tail half of the grid enters
/// the extrema. An outer component (liminf, limsup) becomes -inf / +inf as soon
/// as one tail quotient crosses -T / +T. An inner component becomes infinite
/// only when every quotient of the deepest window (the last max(2, steps/16)
/// grid points) lies beyond the threshold with that sign.
///
/// Throws PreconditionError for bad options and rethrows evaluation failures
/// with the offending h.
DiniEstimate estimate(const MapSpec& f, double p, const EstimateOptions& options = {});

/// Spectrum at a point of a real function: the closed interval spanned by the
/// smallest and largest Dini derivative, intersected with R.
RealIntervalSet sigma_1d(const DiniQuad& q);

/// Approximate point spectrum Sigma of a real function: the union of the
/// closed intervals spanned by the two left and by the two right derivatives.
RealIntervalSet Sigma_1d(const DiniQuad& q);

}  // namespace specpoint::dini
