// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "specpoint/builtins.hpp"
#include "specpoint/errors.hpp"
#include "specpoint/homog2d.hpp"
#include "specpoint/map_algebra.hpp"
#include "test_support.hpp"

using namespace specpoint;
using namespace specpoint::homog2d;
using cd = std::complex<double>;

namespace {

MapSpec constant(PlanePoint c) {
  return MapSpec::black_box(2, [c](const Point&) { return Point{{c.a, c.b}}; });
}

double cardioid_residual(PlanePoint l) {
  const double a = l.a, b = l.b;
  return std::abs((a - 1) * (a - 1) + b * b - std::pow(a * a + b * b - a, 2));
}

}  // namespace

TEST_CASE("sigma_curve examples") {
  const auto id = sigma_curve(builtin("identity"));
  CHECK(id.is_degenerate());
  for (const auto& s : id.samples) CHECK(distance(s.lambda, 1.0) <= 1e-15);

  const auto c1 = sigma_curve(builtin("abs_re_plus_i_im"));
  CHECK(c1.samples.size() >= 4096);
  for (const auto& s : c1.samples) CHECK(std::abs(s.lambda.abs() - 1.0) <= 1e-12);

  const auto card = sigma_curve(builtin("norm_plus_i_im"));
  double worst = 0.0;
  const CurveSample* quarter = nullptr;
  for (const auto& s : card.samples) {
    worst = std::max(worst, cardioid_residual(s.lambda));
    if (std::abs(s.theta - std::numbers::pi / 2) < 1e-12) quarter = &s;
  }
  CHECK(worst < 1e-9);
  REQUIRE(quarter != nullptr);
  CHECK(distance(quarter->lambda, PlanePoint(1.0, -1.0)) <= 1e-12);
}

TEST_CASE("sigma_curve samples are ordered and meet the chord bound") {
  const auto c = sigma_curve(builtin("norm_plus_i_im"));
  for (std::size_t k = 1; k < c.samples.size(); ++k) CHECK(c.samples[k].theta > c.samples[k - 1].theta);
  CHECK(c.samples.front().theta >= 0.0);
  CHECK(c.samples.back().theta < 2 * std::numbers::pi);
  CHECK_FALSE(c.capped);
  CHECK(c.max_chord() <= c.chord_bound);
}

TEST_CASE("sigma_curve rejects non-homogeneous or non-planar maps") {
  CHECK_THROWS_AS(sigma_curve(builtin("norm_plus_i_im_pow", {2.0})), PreconditionError);
  CHECK_THROWS_AS(sigma_curve(builtin("norm_times_x", {3.0})), PreconditionError);
}

TEST_CASE("curve formula against an independent complex evaluation") {
  const MapSpec f = builtin("real_linear", {0.3, -1.2, 2.0, 0.7});
  const auto c = sigma_curve(f);
  for (std::size_t k = 0; k < c.samples.size(); k += 97) {
    const double t = c.samples[k].theta;
    const cd z = std::polar(1.0, t);
    const cd fz(0.3 * z.real() - 1.2 * z.imag(), 2.0 * z.real() + 0.7 * z.imag());
    const cd l = testing_support::eig_curve(fz, t);
    CHECK(std::abs(l - c.samples[k].lambda.complex()) <= 1e-14);
  }
}

TEST_CASE("real_linear curve is the circle a^2+b^2-(s+v)a-(u-t)b+sv-tu = 0") {
  for (int trial = 0; trial < 100; ++trial) {
    const double s = testing_support::uniform(-3, 3), t = testing_support::uniform(-3, 3);
    const double u = testing_support::uniform(-3, 3), v = testing_support::uniform(-3, 3);
    CurveOptions o;
    o.samples = 256;
    const auto c = sigma_curve(builtin("real_linear", {s, t, u, v}), o);
    double worst = 0.0;
    for (const auto& smp : c.samples) {
      const double a = smp.lambda.a, b = smp.lambda.b;
      worst = std::max(worst, std::abs(a * a + b * b - (s + v) * a - (u - t) * b + s * v - t * u));
    }
    CHECK(worst < 1e-9);
    CHECK_FALSE(c.is_degenerate());
  }
  // Complex-linear maps collapse to a point: s = v, t = -u.
  const auto p = sigma_curve(builtin("real_linear", {1.0, -2.0, 2.0, 1.0}));
  CHECK(p.is_degenerate());
  CHECK(distance(p.samples.front().lambda, PlanePoint(1.0, 2.0)) <= 1e-12);
}

TEST_CASE("d and quasinorm") {
  auto check = [](const char* name, double d, double q) {
    const auto r = d_and_quasinorm(builtin(name));
    INFO(name);
    CHECK(r.d == doctest::Approx(d).epsilon(1e-12));
    CHECK(r.q == doctest::Approx(q).epsilon(1e-12));
  };
  check("abs_re_plus_i_im", 1.0, 1.0);
  check("half_abs_re_plus_i_im", 0.5, 1.0);
  check("identity", 1.0, 1.0);
  // Oracle: singular values of the real 2x2 matrix.
  const auto r = d_and_quasinorm(builtin("real_linear", {1.0, 2.0, 3.0, 4.0}));
  Eigen::Matrix2d m;
  m << 1, 2, 3, 4;
  const Eigen::Vector2d sv = m.jacobiSvd().singularValues();
  CHECK(r.d == doctest::Approx(sv(1)).epsilon(1e-10));
  CHECK(r.q == doctest::Approx(sv(0)).epsilon(1e-10));
}

TEST_CASE("Sigma curve lies in the annulus d <= |lambda| <= q") {
  for (const char* name : {"abs_re_plus_i_im", "half_abs_re_plus_i_im", "norm_plus_i_im", "norm_real",
                           "identity", "conjugate", "zero"}) {
    const MapSpec f = builtin(name);
    const auto r = d_and_quasinorm(f);
    for (const auto& s : sigma_curve(f).samples) {
      INFO(name);
      CHECK(s.lambda.abs() >= r.d - 1e-12);
      CHECK(s.lambda.abs() <= r.q + 1e-12);
    }
  }
}

TEST_CASE("winding numbers") {
  CHECK(winding_number(builtin("zero"), 1.0, 1.0).winding == 1);
  CHECK(winding_number(builtin("conjugate"), 0.0, 1.0).winding == -1);
  const auto w = winding_number(builtin("abs_re_plus_i_im"), 0.0, 1.0);
  CHECK(w.winding == 0);
  CHECK(w.margin == doctest::Approx(1.0));
  CHECK_THROWS_AS(winding_number(builtin("abs_re_plus_i_im"), 1.0, 1.0), AdmissibilityError);
}

TEST_CASE("winding number is stable under sample doubling") {
  const MapSpec f = builtin("half_abs_re_plus_i_im");
  for (PlanePoint l : {PlanePoint(0.0), PlanePoint(0.75, 0.05), PlanePoint(2.0, 1.0), PlanePoint(-0.2, 0.3)}) {
    WindingOptions o;
    const int base = winding_number(f, l, 1.0, o).winding;
    for (int k = 0; k < 4; ++k) {
      o.samples *= 2;
      CHECK(winding_number(f, l, 1.0, o).winding == base);
    }
  }
}

TEST_CASE("classify_plane, unit disk") {
  const auto s = classify_plane(builtin("abs_re_plus_i_im"), {}, 80);
  CHECK(s.inconsistent_components == 0);
  CHECK(s.band_violations == 0);
  for (std::size_t iy = 0; iy < s.resolution; ++iy) {
    for (std::size_t ix = 0; ix < s.resolution; ++ix) {
      const double r = s.cell_center(ix, iy).abs();
      const Label l = s.at(ix, iy);
      if (std::abs(r - 1.0) < s.band_radius) CHECK(l == Label::Band);
      if (l == Label::InSpectrum) CHECK(r < 1.0);
      if (l == Label::Regular) CHECK(r > 1.0);
    }
  }
  CHECK(s.count(Label::InSpectrum) > 0);
}

TEST_CASE("classify_plane, real_linear has no off-band spectrum") {
  const auto s = classify_plane(builtin("real_linear", {1.0, 2.0, 3.0, 4.0}), {-4, 8, -6, 6}, 60);
  CHECK(s.count(Label::InSpectrum) == 0);
  CHECK(s.count(Label::Regular) > 0);
}

TEST_CASE("classify_plane, tangent circles") {
  const auto s = classify_plane(builtin("half_abs_re_plus_i_im"), {-1, 1.5, -1, 1}, 100);
  CHECK(s.inconsistent_components == 0);
  const double bound = spectral_radius_bound(builtin("half_abs_re_plus_i_im"));
  const double diag = std::hypot(s.dx(), s.dy());
  for (std::size_t iy = 0; iy < s.resolution; ++iy) {
    for (std::size_t ix = 0; ix < s.resolution; ++ix) {
      const PlanePoint z = s.cell_center(ix, iy);
      const Label l = s.at(ix, iy);
      if (l == Label::Band) continue;
      const bool in_plus = distance(z, 0.25) < 0.75;
      const bool in_minus = distance(z, 0.75) < 0.25;
      const Label expect = (in_plus && !in_minus) ? Label::InSpectrum : Label::Regular;
      CHECK(l == expect);
      if (l == Label::InSpectrum) CHECK(z.abs() <= bound + diag);
    }
  }
}

TEST_CASE("filled labels give band cells the nearest decided label") {
  const auto s = classify_plane(builtin("abs_re_plus_i_im"), {}, 40);
  const auto filled = s.filled_labels();
  CHECK(std::count(filled.begin(), filled.end(), Label::Band) == 0);
  for (std::size_t k = 0; k < filled.size(); ++k) {
    if (s.labels[k] != Label::Band) CHECK(filled[k] == s.labels[k]);
  }
}

TEST_CASE("rouche coincidence") {
  const PlanePoint c(0.3, -0.4);
  const auto a = rouche_coincidence(builtin("identity"), constant(c), 1.0);
  CHECK(distance(a.x, c) < 1e-9);
  const auto b = rouche_coincidence(builtin("real_linear", {2, 0, 0, 2}), constant(c), 1.0);
  CHECK(distance(b.x, 0.5 * c) < 1e-9);

  const MapSpec g = lambda_minus(2.0, builtin("abs_re_plus_i_im"));
  const auto r = rouche_coincidence(g, constant(0.1), 1.0);
  CHECK(r.residual < 1e-9);
  // Oracle: dense grid search for the zero of g - 0.1 on the disk.
  PlanePoint best;
  double best_v = 1e300;
  for (int i = -400; i <= 400; ++i) {
    for (int j = -400; j <= 400; ++j) {
      const PlanePoint z(i / 400.0, j / 400.0);
      if (z.abs() >= 1.0) continue;
      const double v = (g(as_point(z)) - Point{{0.1, 0.0}}).norm();
      if (v < best_v) {
        best_v = v;
        best = z;
      }
    }
  }
  CHECK(distance(r.x, best) < 5e-3);

  CHECK_THROWS_AS(rouche_coincidence(builtin("identity"), constant(2.0), 1.0), PreconditionError);
  CHECK_THROWS_AS(rouche_coincidence(builtin("abs_re_plus_i_im"), constant(0.1), 1.0), PreconditionError);
}

TEST_CASE("spectral radius bound") {
  CHECK(spectral_radius_bound(builtin("abs_re_plus_i_im")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spectral_radius_bound(builtin("half_abs_re_plus_i_im")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spectral_radius_bound(builtin("conj_pair")) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("bifurcation set of homogeneous maps") {
  const auto id = bifurcation_set_homog(builtin("identity"));
  CHECK(id.is_degenerate());
  for (const char* name : {"abs_re_plus_i_im", "norm_real"}) {
    for (const auto& s : bifurcation_set_homog(builtin(name)).samples) {
      CHECK(std::abs(s.lambda.abs() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("scaling and translation equivariance of curves") {
  const MapSpec f = builtin("norm_plus_i_im");
  CurveOptions o;
  o.chord_bound = 1e9;  // keep the same theta samples for every map
  const auto base = sigma_curve(f, o);
  for (double c : {-2.0, 0.5, 3.0}) {
    const auto sc = sigma_curve(scaled(c, f), o);
    REQUIRE(sc.samples.size() == base.samples.size());
    for (std::size_t k = 0; k < base.samples.size(); ++k) {
      CHECK(distance(sc.samples[k].lambda, c * base.samples[k].lambda) <= 1e-12);
    }
  }
  for (PlanePoint c : {PlanePoint(1.5, -0.5), PlanePoint(-2.0)}) {
    const auto tc = sigma_curve(plus_identity(c, f), o);
    for (std::size_t k = 0; k < base.samples.size(); ++k) {
      CHECK(distance(tc.samples[k].lambda, c + base.samples[k].lambda) <= 1e-12);
    }
  }
}

TEST_CASE("hausdorff distance between curves") {
  const auto a = sigma_curve(builtin("abs_re_plus_i_im"));
  const auto b = sigma_curve(builtin("norm_real"));
  CHECK(hausdorff_distance(a, b) < 1e-6);
  const auto c = sigma_curve(builtin("real_linear", {2, 0, 0, 2}));
  CHECK(hausdorff_distance(a, c) == doctest::Approx(3.0).epsilon(1e-9));
}
