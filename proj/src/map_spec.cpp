// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include "specpoint/map_spec.hpp"

#include <cmath>
#include <sstream>

#include "specpoint/errors.hpp"

namespace specpoint {

PlanePoint::PlanePoint(double re, double im) : a(re), b(im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw DomainError("PlanePoint: coordinates must be finite");
  }
}

MapSpec::MapSpec(MapDefinition def) {
  if (def.dim <= 0) throw UsageError("MapSpec: dimension must be positive");
  if (def.kind != MapKind::Structured && !def.evaluator) {
    throw UsageError("MapSpec: missing evaluator for '" + def.name + "'");
  }
  if (def.basepoint.size() == 0) def.basepoint = Point::Zero(def.dim);
  if (def.basepoint.size() != def.dim) throw DomainError("MapSpec: basepoint dimension mismatch");
  if (def.linear) def.homogeneous = true;
  def_ = std::make_shared<const MapDefinition>(std::move(def));
}

MapSpec MapSpec::black_box(int dim, Evaluator evaluator, BlackBoxOptions options) {
  MapDefinition def;
  def.kind = MapKind::BlackBox;
  def.name = std::move(options.name);
  def.dim = dim;
  def.evaluator = std::move(evaluator);
  def.domain = std::move(options.domain);
  def.exact_dini = std::move(options.exact_dini);
  def.jacobian = std::move(options.jacobian);
  def.homogeneous = options.homogeneous;
  def.linear = options.linear;
  def.oscillation_hint = options.oscillation_hint;
  return MapSpec(std::move(def));
}

MapSpec MapSpec::structured(std::shared_ptr<const OperatorExpr> expr) {
  MapDefinition def;
  def.kind = MapKind::Structured;
  def.name = "structured";
  // Infinite-dimensional maps are tagged with a nominal dimension; they are
  // never evaluated pointwise.
  def.dim = 1;
  def.expr = std::move(expr);
  return MapSpec(std::move(def));
}

bool MapSpec::in_domain(const Point& x) const {
  if (x.size() != def_->dim) return false;
  if (!x.allFinite()) return false;
  return !def_->domain || def_->domain(x);
}

Point MapSpec::operator()(const Point& x) const { return eval(*this, x); }

double MapSpec::operator()(double x) const {
  if (def_->dim != 1) throw DomainError("MapSpec: scalar evaluation of a map on R^" +
                                        std::to_string(def_->dim));
  return eval(*this, Point::Constant(1, x))(0);
}

DiniQuad MapSpec::exact_dini(double p) const {
  if (!def_->exact_dini) {
    throw UnsupportedError("no exact Dini provider registered for '" + def_->name + "'");
  }
  if (!in_domain(Point::Constant(1, p))) throw DomainError("exact_dini: point outside domain");
  return def_->exact_dini(p).validate();
}

double MapSpec::increment(double p, double h) const {
  if (!def_->increment) return (*this)(p + h) - (*this)(p);
  if (def_->dim != 1) throw DomainError("MapSpec: increment of a map on R^" + std::to_string(def_->dim));
  if (!in_domain(Point::Constant(1, p)) || !in_domain(Point::Constant(1, p + h))) {
    throw DomainError("increment: point outside the domain of '" + def_->name + "'");
  }
  const double v = def_->increment(p, h);
  if (!std::isfinite(v)) {
    throw EvaluationError("increment: '" + def_->name + "' returned a non-finite value");
  }
  return v;
}

Eigen::MatrixXd MapSpec::jacobian(const Point& p) const {
  if (!def_->jacobian) {
    throw UnsupportedError("no Jacobian provider registered for '" + def_->name + "'");
  }
  if (!in_domain(p)) throw DomainError("jacobian: point outside domain");
  Eigen::MatrixXd j = def_->jacobian(p);
  if (j.rows() != def_->dim || j.cols() != def_->dim || !j.allFinite()) {
    throw EvaluationError("Jacobian of '" + def_->name + "' is malformed or non-finite");
  }
  return j;
}

Point eval(const MapSpec& f, const Point& x) {
  const auto& def = f.definition();
  if (def.kind == MapKind::Structured) {
    throw UnsupportedError("structured maps have no pointwise evaluator");
  }
  if (x.size() != def.dim) {
    throw DomainError("eval: '" + def.name + "' expects a point of R^" + std::to_string(def.dim) +
                      ", got R^" + std::to_string(x.size()));
  }
  if (!f.in_domain(x)) throw DomainError("eval: point outside the domain of '" + def.name + "'");
  Point y = def.evaluator(x);
  if (y.size() != def.dim || !y.allFinite()) {
    std::ostringstream msg;
    msg << "eval: '" << def.name << "' returned a non-finite or malformed value at ("
        << x.transpose() << ")";
    throw EvaluationError(msg.str());
  }
  return y;
}

Point scalar_action(PlanePoint lambda, const Point& x) {
  if (lambda.is_real()) return lambda.a * x;
  if (x.size() % 2 != 0) {
    throw PreconditionError("a non-real scalar acts only on even-dimensional (complex) spaces");
  }
  Point y(x.size());
  for (Eigen::Index k = 0; k < x.size(); k += 2) {
    y(k) = lambda.a * x(k) - lambda.b * x(k + 1);
    y(k + 1) = lambda.b * x(k) + lambda.a * x(k + 1);
  }
  return y;
}

Eigen::MatrixXd scalar_action_matrix(PlanePoint lambda, int dim) {
  if (lambda.is_real()) return lambda.a * Eigen::MatrixXd::Identity(dim, dim);
  if (dim % 2 != 0) {
    throw PreconditionError("a non-real scalar acts only on even-dimensional (complex) spaces");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < dim; k += 2) {
    m(k, k) = lambda.a;
    m(k, k + 1) = -lambda.b;
    m(k + 1, k) = lambda.b;
    m(k + 1, k + 1) = lambda.a;
  }
  return m;
}

}  // namespace specpoint
