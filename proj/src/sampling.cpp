// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include "specpoint/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

#include "specpoint/errors.hpp"

namespace specpoint {
namespace {

constexpr unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};

unsigned prime(std::size_t k) {
  if (k >= std::size(kPrimes)) throw UsageError("sphere_directions: dimension too large for Halton");
  return kPrimes[k];
}

}  // namespace

double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= base;
  }
  return result;
}

std::vector<Point> sphere_directions(int dim, std::size_t count, std::uint64_t seed) {
  if (dim <= 0) throw UsageError("sphere_directions: dimension must be positive");
  std::vector<Point> out;
  if (dim == 1) {
    out.push_back(Point::Constant(1, -1.0));
    out.push_back(Point::Constant(1, 1.0));
    return out;
  }
  out.reserve(count);
  if (dim == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double theta = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      out.push_back(Point{{std::cos(theta), std::sin(theta)}});
    }
    return out;
  }
  const std::size_t pairs = (static_cast<std::size_t>(dim) + 1) / 2;
  for (std::size_t k = 0; out.size() < count; ++k) {
    const std::uint64_t index = seed * 7919 + k + 1;
    Point g(2 * pairs);
    for (std::size_t j = 0; j < pairs; ++j) {
      const double u1 = radical_inverse(index, prime(2 * j));
      const double u2 = radical_inverse(index, prime(2 * j + 1));
      if (u1 <= 0.0) continue;
      const double r = std::sqrt(-2.0 * std::log(u1));
      g(2 * j) = r * std::cos(2 * std::numbers::pi * u2);
      g(2 * j + 1) = r * std::sin(2 * std::numbers::pi * u2);
    }
    Point x = g.head(dim);
    const double n = x.norm();
    if (!(n > 1e-12)) continue;
    out.push_back(x / n);
  }
  return out;
}

std::vector<PlanePoint> disk_points(double radius, std::size_t count, std::uint64_t seed) {
  std::vector<PlanePoint> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t index = seed * 7919 + k + 1;
    const double r = radius * std::sqrt(radical_inverse(index, 2));
    const double t = 2 * std::numbers::pi * radical_inverse(index, 3);
    out.emplace_back(r * std::cos(t), r * std::sin(t));
  }
  return out;
}

unsigned worker_count() {
  if (const char* env = std::getenv("SPECPOINT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {
// Nested parallel loops run serially inside a worker.
thread_local bool inside_worker = false;
}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers =
      inside_worker ? 1u : static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      inside_worker = true;
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

SphereSearchResult sphere_compass_search(const std::function<double(const Point&)>& objective,
                                         const Point& x0, SphereSearchOptions options) {
  SphereSearchResult best{x0.normalized(), 0.0, 0};
  best.value = objective(best.x);
  best.evaluations = 1;
  const Eigen::Index n = best.x.size();
  double step = options.initial_step;
  while (step >= options.min_step && best.evaluations < options.max_evaluations) {
    bool improved = false;
    for (Eigen::Index i = 0; i < n && !improved; ++i) {
      for (double sign : {1.0, -1.0}) {
        Point trial = best.x;
        trial(i) += sign * step;
        const double norm = trial.norm();
        if (!(norm > 0.0)) continue;
        trial /= norm;
        const double v = objective(trial);
        ++best.evaluations;
        if (v < best.value) {
          best.x = std::move(trial);
          best.value = v;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace specpoint
