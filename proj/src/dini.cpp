// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include "specpoint/dini.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "specpoint/errors.hpp"

namespace specpoint::dini {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SideQuotients {
  std::vector<double> tail;  // geometric tail plus hinted samples
  std::vector<double> deep;  // deepest geometric window only
};

/// Oscillation phases of sin(1/h) near a given |h|: the two values
/// 1/(pi/2 + k pi) bracketing it, which alternate between sin = +1 and -1.
std::array<double, 2> extremal_phases(double h) {
  const double k = std::floor((1.0 / h - std::numbers::pi / 2) / std::numbers::pi);
  const double k0 = std::max(0.0, k);
  return {1.0 / (std::numbers::pi / 2 + k0 * std::numbers::pi),
          1.0 / (std::numbers::pi / 2 + (k0 + 1) * std::numbers::pi)};
}

SideQuotients side_quotients(const MapSpec& f, double p, double sign,
                             const EstimateOptions& o) {
  SideQuotients out;
  const int first_tail = o.steps / 2;
  const int deep_len = std::max(2, o.steps / 16);
  auto quotient = [&](double h) {
    double v = 0.0;
    try {
      v = f.increment(p, h);
    } catch (const EvaluationError& e) {
      std::ostringstream msg;
      msg.precision(17);
      msg << e.what() << " (Dini grid offset h = " << h << ")";
      throw EvaluationError(msg.str());
    } catch (const DomainError& e) {
      std::ostringstream msg;
      msg.precision(17);
      msg << e.what() << " (Dini grid offset h = " << h << ")";
      throw DomainError(msg.str());
    }
    return v / h;
  };
  for (int k = first_tail; k < o.steps; ++k) {
    const double h = sign * o.h0 * std::pow(o.ratio, k);
    const double q = quotient(h);
    out.tail.push_back(q);
    if (k >= o.steps - deep_len) out.deep.push_back(q);
    if (o.use_oscillation_hint && f.oscillation_hint()) {
      for (double phase : extremal_phases(std::abs(h))) out.tail.push_back(quotient(sign * phase));
    }
  }
  return out;
}

ExtendedReal lower_component(const SideQuotients& s, double threshold, bool& divergent) {
  const double lo = *std::min_element(s.tail.begin(), s.tail.end());
  const double deep_lo = *std::min_element(s.deep.begin(), s.deep.end());
  divergent = true;
  if (lo < -threshold) return -kInf;
  if (deep_lo > threshold) return kInf;
  divergent = false;
  return lo;
}

ExtendedReal upper_component(const SideQuotients& s, double threshold, bool& divergent) {
  const double hi = *std::max_element(s.tail.begin(), s.tail.end());
  const double deep_hi = *std::max_element(s.deep.begin(), s.deep.end());
  divergent = true;
  if (hi > threshold) return kInf;
  if (deep_hi < -threshold) return -kInf;
  divergent = false;
  return hi;
}

}  // namespace

DiniQuad exact(const MapSpec& f, double p) {
  if (f.dim() != 1) throw PreconditionError("Dini derivatives need a map on R");
  return f.exact_dini(p);
}

DiniEstimate estimate(const MapSpec& f, double p, const EstimateOptions& o) {
  if (f.dim() != 1) throw PreconditionError("Dini derivatives need a map on R");
  if (!(o.h0 > 0) || !(o.ratio > 0 && o.ratio < 1) || o.steps < 8 || !(o.divergence_threshold > 0)) {
    throw PreconditionError("dini::estimate: need h0 > 0, ratio in (0,1), steps >= 8, threshold > 0");
  }
  (void)f(p);
  const auto left = side_quotients(f, p, -1.0, o);
  const auto right = side_quotients(f, p, 1.0, o);

  DiniEstimate out;
  const double t = o.divergence_threshold;
  out.quad.d_minus_low = lower_component(left, t, out.divergent[0]);
  out.quad.d_minus_high = upper_component(left, t, out.divergent[1]);
  out.quad.d_plus_low = lower_component(right, t, out.divergent[2]);
  out.quad.d_plus_high = upper_component(right, t, out.divergent[3]);
  out.left_samples = left.tail.size();
  out.right_samples = right.tail.size();
  return out;
}

RealIntervalSet sigma_1d(const DiniQuad& q) {
  const auto c = q.components();
  const ExtendedReal lo = min_of(c);
  const ExtendedReal hi = max_of(c);
  return RealIntervalSet({{lo, hi}});
}

RealIntervalSet Sigma_1d(const DiniQuad& q) {
  return RealIntervalSet({{min(q.d_minus_low, q.d_minus_high), max(q.d_minus_low, q.d_minus_high)},
                          {min(q.d_plus_low, q.d_plus_high), max(q.d_plus_low, q.d_plus_high)}});
}

}  // namespace specpoint::dini
