// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "specpoint/builtins.hpp"
#include "specpoint/errors.hpp"
#include "specpoint/estimators.hpp"
#include "specpoint/homog2d.hpp"
#include "specpoint/map_algebra.hpp"
#include "test_support.hpp"

using namespace specpoint;
using namespace specpoint::estimators;

namespace {

MapSpec matrix_map(const Eigen::MatrixXd& m) {
  BlackBoxOptions o;
  o.linear = true;
  o.jacobian = [m](const Point&) { return m; };
  return MapSpec::black_box(static_cast<int>(m.cols()), [m](const Point& x) { return Point(m * x); }, o);
}

bool contains_value(const std::vector<PlanePoint>& xs, PlanePoint v, double tol) {
  return std::any_of(xs.begin(), xs.end(), [&](PlanePoint x) { return distance(x, v) <= tol; });
}

}  // namespace

TEST_CASE("rate estimates, examples") {
  const auto r = estimate_rates(builtin("abs_re_plus_i_im"), Point::Zero(2));
  CHECK(std::abs(r.d_p.value() - 1.0) <= 2e-3);
  CHECK(std::abs(r.q_p.value() - 1.0) <= 2e-3);
  CHECK(r.d_p <= r.q_p);
  CHECK(r.radii_used.size() == 6);
  CHECK(r.samples_per_sphere == 1024);

  const auto lin = estimate_rates(builtin("real_linear", {2, 0, 0, 3}), Point{{0.4, -1.1}});
  CHECK(std::abs(lin.d_p.value() - 2.0) <= 1e-6);
  CHECK(std::abs(lin.q_p.value() - 3.0) <= 1e-6);
}

TEST_CASE("rates of a higher-order difference vanish") {
  const MapSpec diff = difference(builtin("norm_plus_i_im_pow", {2.0}), builtin("norm_real"));
  RateOptions o;
  const auto r = estimate_rates(diff, Point::Zero(2), o);
  // |diff(x)| / |x| = y^2 / r <= r on the sphere of radius r.
  const double oracle = o.tail_radii().front();
  CHECK(r.d_p.value() >= 0.0);
  CHECK(r.q_p.value() <= oracle * (1 + 1e-12));
  CHECK(r.q_p.value() < 1e-4);
}

TEST_CASE("rate estimates reproduce singular values of random linear maps") {
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 4;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = testing_support::uniform(-2, 2);
    const Eigen::VectorXd sv = m.jacobiSvd().singularValues();
    const auto r = estimate_rates(matrix_map(m), Point::Zero(n));
    INFO("trial " << trial << " n=" << n);
    CHECK(std::abs(r.d_p.value() - sv(n - 1)) <= 1e-4);
    CHECK(std::abs(r.q_p.value() - sv(0)) <= 1e-4);
  }
}

TEST_CASE("Sigma membership examples") {
  const MapSpec f = builtin("abs_re_plus_i_im");
  CHECK(Sigma_membership(f, Point::Zero(2), 1.0, 1e-3).verdict == Membership::Member);
  const auto no = Sigma_membership(f, Point::Zero(2), 0.0, 1e-3);
  CHECK(no.verdict == Membership::NonMember);
  CHECK(no.margin == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(Sigma_membership(builtin("linear", {1.0}), Point::Zero(1), 1.0, 1e-3).verdict == Membership::Member);
  CHECK_THROWS_AS(Sigma_membership(f, Point::Zero(2), 1.0, 0.0), PreconditionError);
}

TEST_CASE("Sigma members lie in the rate annulus") {
  const double tol = 1e-3;
  for (const char* name : {"abs_re_plus_i_im", "half_abs_re_plus_i_im", "norm_plus_i_im"}) {
    const MapSpec f = builtin(name);
    const auto rates = estimate_rates(f, Point::Zero(2));
    for (const auto& l : lattice(-1.6, 1.6, -1.6, 1.6, 9, 9)) {
      const auto m = Sigma_membership(f, Point::Zero(2), l, tol);
      if (m.verdict == Membership::Member) {
        INFO(name);
        CHECK(l.abs() >= rates.d_p.value() - tol);
        CHECK(l.abs() <= rates.q_p.value() + tol);
      }
    }
  }
}

TEST_CASE("C1 spectrum of x |x|") {
  const auto a = distinct(c1_spectrum(builtin("norm_times_x", {3.0}), Point{{1.0, 0.0, 0.0}}), 1e-10);
  REQUIRE(a.size() == 2);
  CHECK(contains_value(a, 1.0, 1e-12));
  CHECK(contains_value(a, 2.0, 1e-12));

  const auto z = distinct(c1_spectrum(builtin("norm_times_x", {3.0}), Point::Zero(3)), 1e-12);
  REQUIRE(z.size() == 1);
  CHECK(z[0].abs() == 0.0);

  // Oracle: direct eigen-solve of 5 I + p p^T / 5.
  const Point p{{3.0, 4.0}};
  const Eigen::Matrix2d j = 5.0 * Eigen::Matrix2d::Identity() + p * p.transpose() / 5.0;
  const Eigen::Vector2d ev = j.selfadjointView<Eigen::Lower>().eigenvalues();
  const auto b = c1_spectrum(builtin("norm_times_x", {2.0}), p);
  for (int k = 0; k < 2; ++k) CHECK(contains_value(b, ev(k), 1e-12));
  CHECK(contains_value(b, 5.0, 1e-12));
  CHECK(contains_value(b, 10.0, 1e-12));

  CHECK_THROWS_AS(c1_spectrum(builtin("abs_re_plus_i_im"), Point::Zero(2)), UnsupportedError);
}

TEST_CASE("C1 spectrum scales with the map") {
  const MapSpec f = builtin("real_linear", {1.0, 2.0, -3.0, 0.5});
  const Point p{{0.2, 0.1}};
  const auto base = c1_spectrum(f, p);
  for (double c : {-2.0, 0.5, 3.0}) {
    const auto sc = c1_spectrum(scaled(c, f), p);
    for (const auto& v : base) CHECK(contains_value(sc, c * v, 1e-12));
  }
}

TEST_CASE("perturbation equivalence") {
  const auto eq = perturbation_equivalence_check(builtin("norm_plus_i_im_pow", {2.0}), builtin("norm_real"),
                                                 Point::Zero(2));
  CHECK(eq.applicable);
  REQUIRE(eq.distance.has_value());
  CHECK(*eq.distance < 5e-3);

  const MapSpec f = builtin("abs_re_plus_i_im");
  const auto self = perturbation_equivalence_check(f, f, Point::Zero(2));
  CHECK(self.applicable);
  REQUIRE(self.distance.has_value());
  CHECK(*self.distance == 0.0);

  const auto off = perturbation_equivalence_check(builtin("identity"), builtin("real_linear", {1.1, 0, 0, 1.1}),
                                                  Point::Zero(2));
  CHECK_FALSE(off.applicable);
  CHECK(off.q_difference.value() == doctest::Approx(0.1).epsilon(1e-6));
}

TEST_CASE("bifurcation scan, simple maps") {
  const auto grid = lattice(-2, 2, -2, 2, 9, 9);  // contains 1 + 0i
  const auto id = bifurcation_scan(builtin("identity"), grid);
  REQUIRE(id.candidates == 1);
  for (const auto& p : id.points) {
    if (p.verdict == ScanVerdict::Candidate) CHECK(distance(p.lambda, 1.0) < 1e-12);
  }
  CHECK(id.candidates_in_Sigma);

  // Eigenvalue condition of a real-linear map is the circle equation.
  const double s = 1, t = 2, u = 3, v = 4;
  const PlanePoint center((s + v) / 2, (u - t) / 2);
  const double radius = std::sqrt(center.norm2() - (s * v - t * u));
  const auto g = lattice(-2, 7, -4.5, 4.5, 37, 37);
  ScanOptions o;
  o.tol = 0.25;
  const auto rl = bifurcation_scan(builtin("real_linear", {s, t, u, v}), g, o);
  CHECK(rl.candidates > 0);
  for (const auto& p : rl.points) {
    if (p.verdict == ScanVerdict::Candidate) CHECK(std::abs(distance(p.lambda, center) - radius) < 0.25);
  }
  CHECK(rl.candidates_in_Sigma);
}

TEST_CASE("bifurcation candidates are Sigma members") {
  const auto res = bifurcation_scan(builtin("half_abs_re_plus_i_im"), lattice(-1, 1.5, -1, 1, 11, 9));
  for (const auto& p : res.points) {
    if (p.verdict != ScanVerdict::Candidate) continue;
    REQUIRE(p.sigma.has_value());
    CHECK(*p.sigma == Membership::Member);
  }
  CHECK(res.candidates_in_Sigma);
  const auto nz = MapSpec::black_box(2, [](const Point& x) { return Point(x + Point{{1.0, 0.0}}); });
  CHECK_THROWS_AS(bifurcation_scan(nz, lattice(0, 1, 0, 1, 2, 2)), PreconditionError);
}

TEST_CASE("lattice") {
  const auto l = lattice(-1, 1, 0, 2, 3, 2);
  REQUIRE(l.size() == 6);
  CHECK(l.front() == PlanePoint(-1.0, 0.0));
  CHECK(l.back() == PlanePoint(1.0, 2.0));
}
