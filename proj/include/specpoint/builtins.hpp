// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specpoint/map_spec.hpp"

namespace specpoint {

/// Builds a map from the builtin catalogue.
///
/// One-dimensional (exact Dini providers at every point):
///   sqrt_abs            sqrt|x|
///   signed_sqrt_abs     sign(x) sqrt|x|
///   sqrt_abs_sin_inv    sqrt|x| sin(1/x), 0 at 0
///   xsq_sin_inv         x^2 sin(1/x), 0 at 0
///   abs                 |x|
///   linear(c)           c x
///
/// Planar, written for z = x + iy:
///   abs_re_plus_i_im         |x| + iy
///   half_abs_re_plus_i_im    |x|/2 + iy
///   real_linear(s,t,u,v)     (sx + ty) + i(ux + vy)
///   norm_plus_i_im           |z| + iy          (alias cardioid_map)
///   norm_plus_i_im_pow(n)    |z| + i y^n
///   norm_real                |z|
///   identity                 z
///   conjugate                conj(z)
///   zero                     0
///
/// Higher dimensional:
///   conj_pair                (z, w) -> (conj(w), i conj(z)) on C^2 = R^4
///   norm_times_x(n)          x -> |x| x on R^n (n defaults to 2)
///   identity_n(n), zero_n(n)
///
/// Unknown names or wrong parameter counts raise UsageError.
MapSpec builtin(std::string_view name, std::span<const double> params = {});

inline MapSpec builtin(std::string_view name, std::initializer_list<double> params) {
  return builtin(name, std::span<const double>(params.begin(), params.size()));
}

std::vector<std::string> builtin_names();

}  // namespace specpoint
