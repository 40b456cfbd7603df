// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "specpoint/extended_real.hpp"

namespace specpoint {

/// Closed interval of the real line with possibly infinite endpoints. An
/// infinite endpoint means the interval is unbounded on that side.
struct Interval {
  ExtendedReal lo;
  ExtendedReal hi;

  /// Nonempty as a subset of R.
  bool nonempty() const noexcept;
  bool contains(double x) const noexcept;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A finite union of closed intervals, kept sorted and pairwise disjoint.
class RealIntervalSet {
 public:
  RealIntervalSet() = default;
  explicit RealIntervalSet(std::vector<Interval> parts);

  static RealIntervalSet empty() { return {}; }
  static RealIntervalSet whole();
  static RealIntervalSet point(double x);

  const std::vector<Interval>& parts() const noexcept { return parts_; }
  bool is_empty() const noexcept { return parts_.empty(); }
  bool is_whole() const noexcept;
  bool contains(double x) const noexcept;
  /// True when every part of `other` lies inside this set.
  bool contains(const RealIntervalSet& other) const noexcept;
  /// Smallest closed interval containing the set; empty set for empty input.
  RealIntervalSet hull() const;

  /// "[]" for the empty set, otherwise the parts joined by " U ", using
  /// round brackets on infinite sides: "(-inf,+inf)", "[-1,-1] U [1,1]".
  std::string to_string() const;

  friend bool operator==(const RealIntervalSet&, const RealIntervalSet&) = default;

 private:
  std::vector<Interval> parts_;
};

}  // namespace specpoint
