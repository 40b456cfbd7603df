// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "specpoint/map_spec.hpp"

namespace specpoint {

/// g(x) = f(p + x) - f(p), based at the origin. Exact Dini and Jacobian
/// providers are carried over; homogeneity survives only for linear f or
/// p = 0. Throws DomainError when p is outside the domain of f.
MapSpec translate_to_origin(const MapSpec& f, const Point& p);

/// x -> c_id * x + c_f * f(x), with c_id acting as in scalar_action.
MapSpec affine_combination(PlanePoint c_id, double c_f, const MapSpec& f);

/// lambda - f, i.e. x -> lambda x - f(x).
inline MapSpec lambda_minus(PlanePoint lambda, const MapSpec& f) {
  return affine_combination(lambda, -1.0, f);
}

/// c f.
inline MapSpec scaled(double c, const MapSpec& f) { return affine_combination(0.0, c, f); }

/// c + f, i.e. x -> c x + f(x).
inline MapSpec plus_identity(PlanePoint c, const MapSpec& f) {
  return affine_combination(c, 1.0, f);
}

/// x -> f(x) + g(x).
MapSpec sum(const MapSpec& f, const MapSpec& g);

/// x -> f(x) - g(x).
MapSpec difference(const MapSpec& f, const MapSpec& g);

}  // namespace specpoint
