// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specpoint/estimators.hpp"
#include "specpoint/operator_expr.hpp"
#include "specpoint/plane_point.hpp"

namespace specpoint::structured {

using ComplexVector = Eigen::VectorXcd;

/// Closed-form facts about f(z) = (|z|, z1, z2, ...) on l2(C) at p = 0.
/// f = L + k with L the right shift (an isometry onto a codimension-1
/// subspace) and k(z) = |z| e1 of rank one.
struct ShiftModelReport {
  double d = 0.0;
  double q = 0.0;
  double alpha = 0.0;
  double omega = 0.0;
  double Sigma_radius = 0.0;      ///< Sigma(f,0) is the circle of this radius
  double sigma_omega_radius = 0.0;  ///< sigma_omega(f,0) is the unit circle
  double sigma_radius = 0.0;      ///< sigma(f,0) is the closed disk of this radius
  double spectral_radius_bound = 0.0;
  RateBounds mnc;                 ///< alpha/omega rederived by the rule calculus
};

ShiftModelReport shift_model_report();

/// Fredholm index of lambda - L: -1 inside the unit disk, 0 outside,
/// undefined (nullopt) on the unit circle.
std::optional<int> shift_index(PlanePoint lambda);

/// |v_lambda|^2 = 1/(|lambda|^2 - 1), where v_lambda = (1/lambda, 1/lambda^2, ...)
/// solves (lambda - L) v = e1. Requires |lambda| > 1.
double v_norm_sq(PlanePoint lambda);

struct XiSolution {
  bool solvable = false;
  double c = 0.0;                 ///< 1/sqrt(|lambda|^2 - 1)
  std::optional<double> witness;  ///< xi = eps/(1 - c) when solvable
  double substitution_residual = 0.0;
};

/// Decides whether xi - |xi| c = eps has a complex solution xi, with
/// c = 1/sqrt(|lambda|^2 - 1). Requires |lambda| > 1 and eps > 0.
XiSolution xi_equation_solvable(PlanePoint lambda, double eps);

struct TruncatedMin {
  double value = 0.0;
  bool reliable = false;          ///< truncation only meaningful for |lambda| > 1
  std::optional<double> seed_residual;  ///< residual of the geometric seed z_n ~ lambda^(-n)
  ComplexVector minimizer;
};

/// The truncated map f_N(z) = (|z|, z1, ..., z_{N-1}) on C^N.
ComplexVector shift_map(const ComplexVector& z);

/// min over |z| = 1 in C^N of |lambda z - f_N(z)|. Requires N >= 4.
TruncatedMin truncated_shift_min(PlanePoint lambda, int N);

/// Perturbation evaluator with h(0) = 0, applied to vectors of any length.
using ComplexMap = std::function<ComplexVector(const ComplexVector&)>;

struct ShiftScanOptions {
  std::vector<double> radii{1e-2, 1e-3, 1e-4};
  double tol = 1e-2;              ///< bound on the relative residual at the smallest radius
  int max_iterations = 200;
  double iteration_tol = 1e-14;
};

struct ShiftScanPoint {
  PlanePoint lambda;
  estimators::ScanVerdict verdict = estimators::ScanVerdict::Rejected;
  std::vector<double> residuals;           ///< |lambda z - f_N(z) - h(z)| / r
  std::vector<double> absolute_residuals;  ///< same without the 1/r
};

struct ShiftScanResult {
  std::vector<ShiftScanPoint> points;
  std::size_t candidates = 0;
  std::size_t undecided = 0;
};

/// For each lambda, searches for z with |z| = r solving lambda z = f_N(z) + h(z)
/// at each radius r, by fixed-point iteration on the sphere problem.
ShiftScanResult shift_bifurcation_scan(const ComplexMap& h, int N,
                                       std::span<const PlanePoint> grid,
                                       const ShiftScanOptions& options = {});

}  // namespace specpoint::structured
