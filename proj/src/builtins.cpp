// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include "specpoint/builtins.hpp"

#include <cmath>

#include "specpoint/errors.hpp"

namespace specpoint {
namespace {

using Real = double;
constexpr Real kInf = std::numeric_limits<Real>::infinity();

Real sgn(Real x) { return (x > 0) - (x < 0); }

// Increments f(p + h) - f(p) rearranged to avoid cancellation for small h.
Real abs_increment(Real p, Real h) {
  if (p != 0 && sgn(p + h) == sgn(p)) return sgn(p) * h;
  return std::abs(p + h) - std::abs(p);
}

Real sqrt_abs_increment(Real p, Real h) {
  const Real den = std::sqrt(std::abs(p + h)) + std::sqrt(std::abs(p));
  return den == 0 ? 0.0 : abs_increment(p, h) / den;
}

// sin(1/(p + h)) - sin(1/p) for p, p + h nonzero.
Real sin_inv_increment(Real p, Real h) {
  const Real x = p + h;
  return 2 * std::cos((1 / x + 1 / p) / 2) * std::sin(-h / (2 * p * x));
}

MapDefinition scalar_map(std::string name, std::function<Real(Real)> f) {
  MapDefinition def;
  def.kind = MapKind::Builtin1D;
  def.name = std::move(name);
  def.dim = 1;
  def.evaluator = [f = std::move(f)](const Point& x) { return Point::Constant(1, f(x(0))); };
  return def;
}

MapDefinition plane_map(std::string name, std::function<PlanePoint(Real, Real)> f) {
  MapDefinition def;
  def.kind = MapKind::BuiltinPlane;
  def.name = std::move(name);
  def.dim = 2;
  def.evaluator = [f = std::move(f)](const Point& x) { return as_point(f(x(0), x(1))); };
  return def;
}

MapDefinition matrix_map(std::string name, Eigen::MatrixXd m) {
  MapDefinition def;
  def.kind = m.rows() == 2 ? MapKind::BuiltinPlane : MapKind::BlackBox;
  def.name = std::move(name);
  def.dim = static_cast<int>(m.rows());
  def.evaluator = [m](const Point& x) -> Point { return m * x; };
  def.jacobian = [m](const Point&) { return m; };
  def.linear = true;
  return def;
}

DiniQuad differentiable(Real slope) { return DiniQuad::all(slope); }

void expect_params(std::string_view name, std::span<const double> params, std::size_t lo,
                   std::size_t hi) {
  if (params.size() < lo || params.size() > hi) {
    throw UsageError("builtin '" + std::string(name) + "' takes " + std::to_string(lo) +
                     (lo == hi ? "" : "-" + std::to_string(hi)) + " parameter(s), got " +
                     std::to_string(params.size()));
  }
}

int integer_param(std::string_view name, double v, int min_value) {
  if (v != std::floor(v) || v < min_value || v > 1 << 20) {
    throw UsageError("builtin '" + std::string(name) + "' needs an integer parameter >= " +
                     std::to_string(min_value));
  }
  return static_cast<int>(v);
}

MapDefinition make(std::string_view name, std::span<const double> params) {
  // One-dimensional examples.
  if (name == "sqrt_abs") {
    expect_params(name, params, 0, 0);
    auto def = scalar_map("sqrt_abs", [](Real x) { return std::sqrt(std::abs(x)); });
    def.exact_dini = [](Real p) {
      if (p == 0) return DiniQuad{-kInf, -kInf, kInf, kInf};
      return differentiable(sgn(p) / (2 * std::sqrt(std::abs(p))));
    };
    def.increment = sqrt_abs_increment;
    return def;
  }
  if (name == "signed_sqrt_abs") {
    expect_params(name, params, 0, 0);
    auto def = scalar_map("signed_sqrt_abs", [](Real x) { return sgn(x) * std::sqrt(std::abs(x)); });
    def.exact_dini = [](Real p) {
      if (p == 0) return DiniQuad::all(kInf);
      return differentiable(1 / (2 * std::sqrt(std::abs(p))));
    };
    def.increment = [](Real p, Real h) {
      if (p != 0 && sgn(p + h) == sgn(p)) return sgn(p) * sqrt_abs_increment(p, h);
      return sgn(p + h) * std::sqrt(std::abs(p + h)) - sgn(p) * std::sqrt(std::abs(p));
    };
    return def;
  }
  if (name == "sqrt_abs_sin_inv") {
    expect_params(name, params, 0, 0);
    auto def = scalar_map("sqrt_abs_sin_inv", [](Real x) {
      return x == 0 ? 0.0 : std::sqrt(std::abs(x)) * std::sin(1 / x);
    });
    def.exact_dini = [](Real p) {
      if (p == 0) return DiniQuad{-kInf, kInf, -kInf, kInf};
      const Real r = std::sqrt(std::abs(p));
      return differentiable(sgn(p) / (2 * r) * std::sin(1 / p) - r * std::cos(1 / p) / (p * p));
    };
    def.increment = [](Real p, Real h) {
      const Real x = p + h;
      if (p == 0) return std::sqrt(std::abs(x)) * std::sin(1 / x);
      if (x == 0) return -std::sqrt(std::abs(p)) * std::sin(1 / p);
      return sqrt_abs_increment(p, h) * std::sin(1 / x) + std::sqrt(std::abs(p)) * sin_inv_increment(p, h);
    };
    def.oscillation_hint = true;
    return def;
  }
  if (name == "xsq_sin_inv") {
    expect_params(name, params, 0, 0);
    auto def = scalar_map("xsq_sin_inv", [](Real x) { return x == 0 ? 0.0 : x * x * std::sin(1 / x); });
    def.exact_dini = [](Real p) {
      if (p == 0) return DiniQuad::all(0.0);
      return differentiable(2 * p * std::sin(1 / p) - std::cos(1 / p));
    };
    def.increment = [](Real p, Real h) {
      const Real x = p + h;
      if (p == 0) return x * x * std::sin(1 / x);
      if (x == 0) return -p * p * std::sin(1 / p);
      return h * (2 * p + h) * std::sin(1 / x) + p * p * sin_inv_increment(p, h);
    };
    def.oscillation_hint = true;
    return def;
  }
  if (name == "abs") {
    expect_params(name, params, 0, 0);
    auto def = scalar_map("abs", [](Real x) { return std::abs(x); });
    def.exact_dini = [](Real p) {
      if (p == 0) return DiniQuad{-1.0, -1.0, 1.0, 1.0};
      return differentiable(sgn(p));
    };
    def.increment = abs_increment;
    def.homogeneous = true;
    return def;
  }
  if (name == "linear") {
    expect_params(name, params, 1, 1);
    const Real c = params[0];
    auto def = scalar_map("linear", [c](Real x) { return c * x; });
    def.exact_dini = [c](Real) { return differentiable(c); };
    def.increment = [c](Real, Real h) { return c * h; };
    def.jacobian = [c](const Point&) { return Eigen::MatrixXd::Constant(1, 1, c); };
    def.linear = true;
    return def;
  }

  // Planar examples, z = x + iy.
  if (name == "abs_re_plus_i_im") {
    expect_params(name, params, 0, 0);
    auto def = plane_map("abs_re_plus_i_im", [](Real x, Real y) { return PlanePoint{std::abs(x), y}; });
    def.homogeneous = true;
    return def;
  }
  if (name == "half_abs_re_plus_i_im") {
    expect_params(name, params, 0, 0);
    auto def = plane_map("half_abs_re_plus_i_im",
                         [](Real x, Real y) { return PlanePoint{std::abs(x) / 2, y}; });
    def.homogeneous = true;
    return def;
  }
  if (name == "real_linear") {
    expect_params(name, params, 4, 4);
    Eigen::Matrix2d m;
    m << params[0], params[1], params[2], params[3];
    auto def = matrix_map("real_linear", m);
    return def;
  }
  if (name == "norm_plus_i_im" || name == "cardioid_map") {
    expect_params(name, params, 0, 0);
    auto def = plane_map(std::string(name),
                         [](Real x, Real y) { return PlanePoint{std::hypot(x, y), y}; });
    def.homogeneous = true;
    return def;
  }
  if (name == "norm_plus_i_im_pow") {
    expect_params(name, params, 1, 1);
    const int n = integer_param(name, params[0], 1);
    auto def = plane_map("norm_plus_i_im_pow", [n](Real x, Real y) {
      return PlanePoint{std::hypot(x, y), std::pow(y, n)};
    });
    def.homogeneous = n == 1;
    return def;
  }
  if (name == "norm_real") {
    expect_params(name, params, 0, 0);
    auto def = plane_map("norm_real", [](Real x, Real y) { return PlanePoint{std::hypot(x, y), 0.0}; });
    def.homogeneous = true;
    return def;
  }
  if (name == "identity") {
    expect_params(name, params, 0, 0);
    return matrix_map("identity", Eigen::Matrix2d::Identity());
  }
  if (name == "conjugate") {
    expect_params(name, params, 0, 0);
    Eigen::Matrix2d m;
    m << 1, 0, 0, -1;
    return matrix_map("conjugate", m);
  }
  if (name == "zero") {
    expect_params(name, params, 0, 0);
    return matrix_map("zero", Eigen::Matrix2d::Zero());
  }

  // Higher-dimensional examples.
  if (name == "conj_pair") {
    expect_params(name, params, 0, 0);
    // (x1 + i y1, x2 + i y2) -> (x2 - i y2, y1 + i x1)
    Eigen::Matrix4d m;
    m << 0, 0, 1, 0,
         0, 0, 0, -1,
         0, 1, 0, 0,
         1, 0, 0, 0;
    return matrix_map("conj_pair", m);
  }
  if (name == "norm_times_x") {
    expect_params(name, params, 0, 1);
    const int n = params.empty() ? 2 : integer_param(name, params[0], 1);
    MapDefinition def;
    def.kind = n == 2 ? MapKind::BuiltinPlane : MapKind::BlackBox;
    def.name = "norm_times_x";
    def.dim = n;
    def.evaluator = [](const Point& x) -> Point { return x.norm() * x; };
    def.jacobian = [n](const Point& p) -> Eigen::MatrixXd {
      const Real r = p.norm();
      if (r == 0) return Eigen::MatrixXd::Zero(n, n);
      return r * Eigen::MatrixXd::Identity(n, n) + p * p.transpose() / r;
    };
    return def;
  }
  if (name == "identity_n" || name == "zero_n") {
    expect_params(name, params, 1, 1);
    const int n = integer_param(name, params[0], 1);
    const Real c = name == "identity_n" ? 1.0 : 0.0;
    auto def = matrix_map(std::string(name), c * Eigen::MatrixXd::Identity(n, n));
    if (n == 1) {
      def.kind = MapKind::Builtin1D;
      def.exact_dini = [c](Real) { return differentiable(c); };
      def.increment = [c](Real, Real h) { return c * h; };
    }
    return def;
  }
  throw UsageError("unknown builtin '" + std::string(name) + "'");
}

}  // namespace

MapSpec builtin(std::string_view name, std::span<const double> params) {
  auto def = make(name, params);
  def.params.assign(params.begin(), params.end());
  return MapSpec(std::move(def));
}

std::vector<std::string> builtin_names() {
  return {"sqrt_abs",       "signed_sqrt_abs",    "sqrt_abs_sin_inv", "xsq_sin_inv",
          "abs",            "linear",             "abs_re_plus_i_im", "half_abs_re_plus_i_im",
          "real_linear",    "norm_plus_i_im",     "cardioid_map",     "norm_plus_i_im_pow",
          "norm_real",      "identity",           "conjugate",        "zero",
          "conj_pair",      "norm_times_x",       "identity_n",       "zero_n"};
}

}  // namespace specpoint
