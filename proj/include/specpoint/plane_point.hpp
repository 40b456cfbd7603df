// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>

namespace specpoint {

/// A complex number a + ib with finite coordinates. Used for spectral
/// parameters and for points of the plane R^2 = C.
struct PlanePoint {
  double a = 0.0;
  double b = 0.0;

  constexpr PlanePoint() = default;
  PlanePoint(double re, double im = 0.0);  // NOLINT(google-explicit-constructor)
  explicit PlanePoint(std::complex<double> z) : PlanePoint(z.real(), z.imag()) {}

  std::complex<double> complex() const noexcept { return {a, b}; }
  double abs() const noexcept { return std::hypot(a, b); }
  double norm2() const noexcept { return a * a + b * b; }
  bool is_real() const noexcept { return b == 0.0; }
  PlanePoint conj() const noexcept { return {a, -b}; }

  friend PlanePoint operator+(PlanePoint x, PlanePoint y) { return {x.a + y.a, x.b + y.b}; }
  friend PlanePoint operator-(PlanePoint x, PlanePoint y) { return {x.a - y.a, x.b - y.b}; }
  friend PlanePoint operator*(PlanePoint x, PlanePoint y) { return cmul(x, y); }
  friend PlanePoint operator*(double c, PlanePoint x) { return {c * x.a, c * x.b}; }
  friend bool operator==(PlanePoint, PlanePoint) = default;

  /// Complex multiplication on coordinate pairs.
  static PlanePoint cmul(PlanePoint x, PlanePoint y) {
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
  }
};

inline PlanePoint unit_circle(double theta) { return {std::cos(theta), std::sin(theta)}; }

inline double distance(PlanePoint x, PlanePoint y) { return (x - y).abs(); }

}  // namespace specpoint
