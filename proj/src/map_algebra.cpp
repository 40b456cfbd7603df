// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include "specpoint/map_algebra.hpp"

#include "specpoint/errors.hpp"

namespace specpoint {

MapSpec translate_to_origin(const MapSpec& f, const Point& p) {
  if (!f.in_domain(p)) throw DomainError("translate_to_origin: p is outside the domain of f");
  const Point fp = eval(f, p);
  const auto& src = f.definition();

  MapDefinition def = src;
  def.name = src.name + "@p";
  def.basepoint = Point::Zero(src.dim);
  def.evaluator = [f, p, fp](const Point& x) -> Point { return eval(f, p + x) - fp; };
  if (src.domain) {
    def.domain = [f, p](const Point& x) { return f.in_domain(p + x); };
  }
  if (src.exact_dini) {
    def.exact_dini = [f, p](double x) { return f.exact_dini(p(0) + x); };
  }
  if (src.jacobian) {
    def.jacobian = [f, p](const Point& x) { return f.jacobian(p + x); };
  }
  if (src.increment) {
    def.increment = [f, p](double x, double h) { return f.increment(p(0) + x, h); };
  }
  def.homogeneous = src.linear || (src.homogeneous && p.isZero(0.0));
  def.oscillation_hint = src.oscillation_hint && p.isZero(0.0);
  return MapSpec(std::move(def));
}

MapSpec affine_combination(PlanePoint c_id, double c_f, const MapSpec& f) {
  const auto& src = f.definition();
  if (!c_id.is_real() && src.dim % 2 != 0) {
    throw PreconditionError("a non-real scalar acts only on even-dimensional (complex) spaces");
  }
  MapDefinition def = src;
  def.kind = src.kind == MapKind::Structured ? MapKind::Structured : MapKind::BlackBox;
  def.name = "affine(" + src.name + ")";
  def.params.clear();
  if (src.evaluator) {
    def.evaluator = [f, c_id, c_f](const Point& x) -> Point {
      return scalar_action(c_id, x) + c_f * eval(f, x);
    };
  }
  if (src.exact_dini && c_id.is_real()) {
    def.exact_dini = [f, c_id, c_f](double p) {
      return affine_transform(f.exact_dini(p), c_id.a, c_f);
    };
  } else {
    def.exact_dini = nullptr;
  }
  if (src.increment && c_id.is_real()) {
    def.increment = [f, c_id, c_f](double p, double h) { return c_id.a * h + c_f * f.increment(p, h); };
  } else {
    def.increment = nullptr;
  }
  if (src.jacobian) {
    const int n = src.dim;
    def.jacobian = [f, c_id, c_f, n](const Point& p) -> Eigen::MatrixXd {
      return scalar_action_matrix(c_id, n) + c_f * f.jacobian(p);
    };
  }
  if (c_f == 0.0) def.oscillation_hint = false;
  return MapSpec(std::move(def));
}

namespace {

MapSpec combine(const MapSpec& f, const MapSpec& g, double sign, const char* op) {
  if (f.dim() != g.dim()) throw DomainError("cannot combine maps of different dimensions");
  const auto& fd = f.definition();
  const auto& gd = g.definition();
  MapDefinition def;
  def.kind = MapKind::BlackBox;
  def.name = fd.name + op + gd.name;
  def.dim = fd.dim;
  def.evaluator = [f, g, sign](const Point& x) -> Point { return eval(f, x) + sign * eval(g, x); };
  if (fd.domain || gd.domain) {
    def.domain = [f, g](const Point& x) { return f.in_domain(x) && g.in_domain(x); };
  }
  if (fd.jacobian && gd.jacobian) {
    def.jacobian = [f, g, sign](const Point& p) -> Eigen::MatrixXd {
      return f.jacobian(p) + sign * g.jacobian(p);
    };
  }
  if (fd.increment && gd.increment) {
    def.increment = [f, g, sign](double p, double h) { return f.increment(p, h) + sign * g.increment(p, h); };
  }
  def.homogeneous = fd.homogeneous && gd.homogeneous;
  def.linear = fd.linear && gd.linear;
  def.oscillation_hint = fd.oscillation_hint || gd.oscillation_hint;
  return MapSpec(std::move(def));
}

}  // namespace

MapSpec sum(const MapSpec& f, const MapSpec& g) { return combine(f, g, 1.0, "+"); }

MapSpec difference(const MapSpec& f, const MapSpec& g) { return combine(f, g, -1.0, "-"); }

}  // namespace specpoint
