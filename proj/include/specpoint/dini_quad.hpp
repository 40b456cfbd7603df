// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "specpoint/extended_real.hpp"

namespace specpoint {

/// The four Dini derivatives of a real function at a point:
/// lower/upper left derivative and lower/upper right derivative.
struct DiniQuad {
  ExtendedReal d_minus_low;   ///< liminf over h -> 0-
  ExtendedReal d_minus_high;  ///< limsup over h -> 0-
  ExtendedReal d_plus_low;    ///< liminf over h -> 0+
  ExtendedReal d_plus_high;   ///< limsup over h -> 0+

  /// Checks low <= high on both sides; throws DomainError otherwise.
  DiniQuad& validate();

  std::array<ExtendedReal, 4> components() const {
    return {d_minus_low, d_minus_high, d_plus_low, d_plus_high};
  }

  static DiniQuad all(ExtendedReal v) { return {v, v, v, v}; }

  friend bool operator==(const DiniQuad&, const DiniQuad&) = default;
};

/// Dini quadruple of x -> shift + scale * f(x) given the quadruple of f.
/// A negative scale swaps the liminf/limsup roles on each side.
DiniQuad affine_transform(const DiniQuad& q, double shift, double scale);

}  // namespace specpoint
