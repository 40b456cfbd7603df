// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include "specpoint/shift_model.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "specpoint/errors.hpp"
#include "specpoint/sampling.hpp"

namespace specpoint::structured {
namespace {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

Matrix lambda_minus_shift(cd lambda, int n) {
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = lambda;
  for (int i = 1; i < n; ++i) a(i, i - 1) = -1.0;
  return a;
}

double residual(cd lambda, const ComplexVector& z, const ComplexVector& extra) {
  ComplexVector r = lambda * z - shift_map(z) - extra;
  return r.norm();
}

/// Global minimiser of |A y - b| subject to |y| = 1.
/// Stationary points satisfy (A*A + mu) y = A* b; the global one has
/// A*A + mu >= 0, which pins mu to the last root of the secular equation.
ComplexVector sphere_least_squares(const Eigen::JacobiSVD<Matrix>& svd, const ComplexVector& b) {
  const Eigen::VectorXd& s = svd.singularValues();
  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();
  const Eigen::Index n = s.size();
  const ComplexVector c = u.adjoint() * b;
  const double smin = s(n - 1);
  const double smin2 = smin * smin;
  const double scale = std::max(1.0, s(0));
  const double degenerate = 1e-12 * scale;

  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = s(i) * std::abs(c(i));
  auto phi = [&](double t) {  // t = mu + smin^2 > 0
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double den = s(i) * s(i) - smin2 + t;
      if (w(i) != 0.0) sum += (w(i) / den) * (w(i) / den);
    }
    return sum;
  };
  auto solution = [&](double t) {
    ComplexVector y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double den = s(i) * s(i) - smin2 + t;
      y(i) = den > 0.0 ? s(i) * c(i) / den : cd(0.0);
    }
    return y;
  };

  // Hard case: no weight on the smallest singular space, so phi stays
  // bounded as t -> 0 and may never reach 1.
  bool hard = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (s(i) - smin <= degenerate && w(i) > degenerate * 1e-3) hard = false;
  }
  if (hard) {
    ComplexVector y(n);
    double mass = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double den = s(i) * s(i) - smin2;
      y(i) = (s(i) - smin > degenerate) ? s(i) * c(i) / den : cd(0.0);
      mass += std::norm(y(i));
    }
    if (mass <= 1.0) {
      y(n - 1) += std::sqrt(1.0 - mass);
      return v * y;
    }
  }

  double lo = 1e-300;
  double hi = w.norm() + 1.0;
  if (phi(lo) <= 1.0) hi = lo;
  for (int it = 0; it < 400 && hi > lo; ++it) {
    const double mid = hi / lo > 2.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (phi(mid) > 1.0 ? lo : hi) = mid;
  }
  ComplexVector y = solution(hi);
  const double norm = y.norm();
  if (!(norm > 0.0)) throw NumericError("sphere least squares: degenerate secular equation");
  return v * (y / norm);
}

}  // namespace

ComplexVector shift_map(const ComplexVector& z) {
  const Eigen::Index n = z.size();
  ComplexVector out(n);
  if (n == 0) return out;
  out(0) = z.norm();
  for (Eigen::Index i = 1; i < n; ++i) out(i) = z(i - 1);
  return out;
}

ShiftModelReport shift_model_report() {
  ShiftModelReport r;
  const double root2 = std::sqrt(2.0);
  r.d = root2;
  r.q = root2;
  r.alpha = 1.0;
  r.omega = 1.0;
  r.Sigma_radius = root2;
  r.sigma_omega_radius = 1.0;
  r.sigma_radius = root2;
  r.spectral_radius_bound = std::max(r.alpha, r.q);
  r.mnc = mnc_bounds(*OperatorExpr::sum(OperatorExpr::isometry(1), OperatorExpr::locally_compact()));
  return r;
}

std::optional<int> shift_index(PlanePoint lambda) {
  const double m = lambda.abs();
  if (m < 1.0) return -1;
  if (m > 1.0) return 0;
  return std::nullopt;
}

double v_norm_sq(PlanePoint lambda) {
  const double m2 = lambda.norm2();
  if (!(m2 > 1.0)) throw PreconditionError("v_norm_sq requires |lambda| > 1");
  return 1.0 / (m2 - 1.0);
}

XiSolution xi_equation_solvable(PlanePoint lambda, double eps) {
  const double m2 = lambda.norm2();
  if (!(m2 > 1.0)) throw PreconditionError("xi equation requires |lambda| > 1");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw PreconditionError("xi equation requires eps > 0");
  XiSolution out;
  out.c = 1.0 / std::sqrt(m2 - 1.0);
  // xi is real because eps and |xi| c are; xi < 0 would give xi (1 + c) = eps < 0.
  // So xi >= 0 and xi (1 - c) = eps.
  // |lambda| = sqrt(2) up to rounding is the boundary case c = 1.
  if (out.c < 1.0 - 8 * std::numeric_limits<double>::epsilon()) {
    const double xi = eps / (1.0 - out.c);
    out.substitution_residual = std::abs(xi - std::abs(xi) * out.c - eps);
    out.solvable = out.substitution_residual <= 1e-12 * std::max(1.0, xi);
    if (out.solvable) out.witness = xi;
  }
  return out;
}

TruncatedMin truncated_shift_min(PlanePoint lambda, int N) {
  if (N < 4) throw PreconditionError("truncated_shift_min requires N >= 4");
  const cd l = lambda.complex();
  TruncatedMin out;
  out.reliable = lambda.abs() > 1.0;

  const ComplexVector zero = ComplexVector::Zero(N);
  if (out.reliable) {
    ComplexVector seed(N);
    cd term = 1.0 / l;
    for (int i = 0; i < N; ++i) {
      seed(i) = term;
      term /= l;
    }
    seed.normalize();
    out.seed_residual = residual(l, seed, zero);
  }

  // On the unit sphere f_N(z) = e1 + S z, so the problem is
  // min |(lambda - S) z - e1| subject to |z| = 1.
  Eigen::JacobiSVD<Matrix> svd(lambda_minus_shift(l, N), Eigen::ComputeFullU | Eigen::ComputeFullV);
  ComplexVector e1 = ComplexVector::Zero(N);
  e1(0) = 1.0;
  ComplexVector z = sphere_least_squares(svd, e1);
  out.value = residual(l, z, zero);
  if (!std::isfinite(out.value)) {
    throw SolverError("truncated_shift_min: non-finite residual", out.seed_residual.value_or(0.0));
  }
  out.minimizer = std::move(z);
  return out;
}

ShiftScanResult shift_bifurcation_scan(const ComplexMap& h, int N, std::span<const PlanePoint> grid,
                                       const ShiftScanOptions& options) {
  if (N < 4) throw PreconditionError("shift_bifurcation_scan requires N >= 4");
  if (options.radii.empty()) throw PreconditionError("shift_bifurcation_scan needs at least one radius");
  for (double r : options.radii) {
    if (!(r > 0.0)) throw PreconditionError("radii must be positive");
  }
  {
    const ComplexVector h0 = h(ComplexVector::Zero(N));
    if (h0.size() != N) throw DomainError("perturbation changed the dimension");
    if (h0.norm() != 0.0) throw PreconditionError("perturbation must vanish at 0");
  }

  ShiftScanResult result;
  result.points.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    const cd l = grid[k].complex();
    Eigen::JacobiSVD<Matrix> svd(lambda_minus_shift(l, N), Eigen::ComputeFullU | Eigen::ComputeFullV);
    ShiftScanPoint pt;
    pt.lambda = grid[k];
    ComplexVector e1 = ComplexVector::Zero(N);
    e1(0) = 1.0;
    for (double r : options.radii) {
      ComplexVector y = sphere_least_squares(svd, e1);
      for (int it = 0; it < options.max_iterations; ++it) {
        const ComplexVector hz = h(r * y);
        if (hz.size() != N) throw DomainError("perturbation changed the dimension");
        ComplexVector next = sphere_least_squares(svd, e1 + hz / r);
        const double step = (next - y).norm();
        y = std::move(next);
        if (step < options.iteration_tol) break;
      }
      const ComplexVector z = r * y;
      const double abs_res = residual(l, z, h(z));
      if (!std::isfinite(abs_res)) throw EvaluationError("non-finite residual in shift scan");
      pt.absolute_residuals.push_back(abs_res);
      pt.residuals.push_back(abs_res / r);
    }
    const double last = pt.residuals.back();
    const double first = pt.residuals.front();
    bool any_small = false;
    for (double v : pt.residuals) any_small = any_small || v < options.tol;
    if (last < options.tol && last <= first * (1.0 + 1e-9) + 1e-15) {
      pt.verdict = estimators::ScanVerdict::Candidate;
    } else if (!any_small) {
      pt.verdict = estimators::ScanVerdict::Rejected;
    } else {
      pt.verdict = estimators::ScanVerdict::Undecided;
    }
    result.points[k] = std::move(pt);
  });
  for (const auto& p : result.points) {
    if (p.verdict == estimators::ScanVerdict::Candidate) ++result.candidates;
    if (p.verdict == estimators::ScanVerdict::Undecided) ++result.undecided;
  }
  return result;
}

}  // namespace specpoint::structured
