// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include "specpoint/interval_set.hpp"

#include <algorithm>

#include "specpoint/dini_quad.hpp"
#include "specpoint/errors.hpp"

namespace specpoint {

bool Interval::nonempty() const noexcept {
  if (hi < lo) return false;
  // [+inf, +inf] and [-inf, -inf] contain no real number.
  if (lo.is_pos_inf() || hi.is_neg_inf()) return false;
  return true;
}

bool Interval::contains(double x) const noexcept {
  return nonempty() && lo <= ExtendedReal(x) && ExtendedReal(x) <= hi;
}

RealIntervalSet::RealIntervalSet(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& i) { return !i.nonempty(); });
  std::sort(parts.begin(), parts.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  for (const auto& part : parts) {
    if (!parts_.empty() && part.lo <= parts_.back().hi) {
      parts_.back().hi = max(parts_.back().hi, part.hi);
    } else {
      parts_.push_back(part);
    }
  }
}

RealIntervalSet RealIntervalSet::whole() {
  return RealIntervalSet({{ExtendedReal::neg_inf(), ExtendedReal::pos_inf()}});
}

RealIntervalSet RealIntervalSet::point(double x) { return RealIntervalSet({{x, x}}); }

bool RealIntervalSet::is_whole() const noexcept {
  return parts_.size() == 1 && parts_.front().lo.is_neg_inf() && parts_.front().hi.is_pos_inf();
}

bool RealIntervalSet::contains(double x) const noexcept {
  return std::any_of(parts_.begin(), parts_.end(),
                     [x](const Interval& i) { return i.contains(x); });
}

bool RealIntervalSet::contains(const RealIntervalSet& other) const noexcept {
  return std::all_of(other.parts_.begin(), other.parts_.end(), [this](const Interval& o) {
    return std::any_of(parts_.begin(), parts_.end(),
                       [&o](const Interval& i) { return i.lo <= o.lo && o.hi <= i.hi; });
  });
}

RealIntervalSet RealIntervalSet::hull() const {
  if (parts_.empty()) return {};
  return RealIntervalSet({{parts_.front().lo, parts_.back().hi}});
}

std::string RealIntervalSet::to_string() const {
  if (parts_.empty()) return "[]";
  std::string out;
  for (const auto& i : parts_) {
    if (!out.empty()) out += " U ";
    out += i.lo.is_neg_inf() ? "(-inf" : "[" + i.lo.to_string();
    out += ",";
    out += i.hi.is_pos_inf() ? "+inf)" : i.hi.to_string() + "]";
  }
  return out;
}

DiniQuad& DiniQuad::validate() {
  if (d_minus_high < d_minus_low || d_plus_high < d_plus_low) {
    throw DomainError("DiniQuad: lower Dini derivative exceeds the upper one");
  }
  return *this;
}

DiniQuad affine_transform(const DiniQuad& q, double shift, double scale) {
  auto map = [&](ExtendedReal v) { return ExtendedReal(shift) + scale * v; };
  if (scale >= 0.0) {
    return {map(q.d_minus_low), map(q.d_minus_high), map(q.d_plus_low), map(q.d_plus_high)};
  }
  return {map(q.d_minus_high), map(q.d_minus_low), map(q.d_plus_high), map(q.d_plus_low)};
}

}  // namespace specpoint
