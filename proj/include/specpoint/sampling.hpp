// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "specpoint/map_spec.hpp"

namespace specpoint {

/// Element `index` of the van der Corput sequence in `base`.
double radical_inverse(std::uint64_t index, unsigned base);

/// Deterministic low-discrepancy directions on the unit sphere of R^dim.
///
/// dim 1 gives {-1, +1}; dim 2 gives equally spaced angles 2 pi k / count
/// (so the coordinate axes are included when count is a multiple of 4);
/// higher dimensions use Halton points pushed through Box-Muller and
/// normalized. `seed` shifts the Halton start index.
std::vector<Point> sphere_directions(int dim, std::size_t count, std::uint64_t seed = 0);

/// Low-discrepancy points in the closed disk of the given radius.
std::vector<PlanePoint> disk_points(double radius, std::size_t count, std::uint64_t seed = 0);

/// Number of workers for data-parallel loops: SPECPOINT_THREADS when set to
/// a positive integer, otherwise the hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index
/// is visited exactly once; results must be written to per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

struct SphereSearchOptions {
  double initial_step = 0.25;
  double min_step = 1e-10;
  std::size_t max_evaluations = 200000;
};

struct SphereSearchResult {
  Point x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Derivative-free compass search for a local minimum of `objective` on the
/// unit sphere, starting from the unit vector x0. Trial points move along
/// +-e_i and are renormalized; the step halves whenever no direction improves.
SphereSearchResult sphere_compass_search(const std::function<double(const Point&)>& objective,
                                         const Point& x0, SphereSearchOptions options = {});

}  // namespace specpoint
