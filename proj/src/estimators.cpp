// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include "specpoint/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "specpoint/dini.hpp"
#include "specpoint/errors.hpp"
#include "specpoint/homog2d.hpp"
#include "specpoint/map_algebra.hpp"
#include "specpoint/sampling.hpp"

namespace specpoint::estimators {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SphereExtrema {
  double min = kInf;
  double max = -kInf;
  Point argmin;
};

/// Extrema of objective over the unit sphere: low-discrepancy samples, then
/// compass-search polish from the best sample(s).
SphereExtrema sphere_extrema(const std::function<double(const Point&)>& objective, int dim,
                             std::size_t samples, std::uint64_t seed, bool polish_min,
                             bool polish_max) {
  const auto dirs = sphere_directions(dim, samples, seed);
  SphereExtrema out;
  std::size_t imin = 0, imax = 0;
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    const double v = objective(dirs[j]);
    if (v < out.min) {
      out.min = v;
      imin = j;
    }
    if (v > out.max) {
      out.max = v;
      imax = j;
    }
  }
  out.argmin = dirs[imin];
  if (dim == 1) return out;
  SphereSearchOptions search;
  search.initial_step = dim == 2 ? std::max(1e-3, 8.0 / static_cast<double>(dirs.size())) : 0.2;
  search.min_step = 1e-10;
  search.max_evaluations = 20000;
  if (polish_min) {
    auto r = sphere_compass_search(objective, dirs[imin], search);
    if (r.value < out.min) {
      out.min = r.value;
      out.argmin = r.x;
    }
  }
  if (polish_max) {
    auto r = sphere_compass_search([&](const Point& x) { return -objective(x); }, dirs[imax], search);
    out.max = std::max(out.max, -r.value);
  }
  return out;
}

void check_options(const RateOptions& o) {
  if (!(o.r_max > 0) || !(o.r_min > 0) || o.r_min > o.r_max || !(o.ratio > 0 && o.ratio < 1) ||
      o.tail == 0 || o.samples == 0) {
    throw PreconditionError("rate options: need 0 < r_min <= r_max, ratio in (0,1), tail > 0, samples > 0");
  }
}

double interval_endpoint_gap(ExtendedReal x, ExtendedReal y) {
  if (x == y) return 0.0;
  if (!x.is_finite() || !y.is_finite()) return kInf;
  return std::abs(x.value() - y.value());
}

}  // namespace

std::vector<double> RateOptions::tail_radii() const {
  std::vector<double> all;
  for (double r = r_max; r >= r_min * (1 - 1e-12); r *= ratio) all.push_back(r);
  const std::size_t keep = std::min(tail, all.size());
  return {all.end() - static_cast<std::ptrdiff_t>(keep), all.end()};
}

LocalRates estimate_rates(const MapSpec& f, const Point& p, const RateOptions& o) {
  check_options(o);
  if (!f.in_domain(p)) throw DomainError("estimate_rates: p is outside the domain");
  const Point fp = eval(f, p);
  LocalRates out;
  out.radii_used = o.tail_radii();
  out.per_radius.resize(out.radii_used.size());
  parallel_for(out.radii_used.size(), [&](std::size_t k) {
    const double r = out.radii_used[k];
    auto ratio = [&](const Point& x) { return (eval(f, p + r * x) - fp).norm() / r; };
    const auto ext = sphere_extrema(ratio, f.dim(), o.samples, o.seed, o.polish, o.polish);
    out.per_radius[k] = {r, ext.min, ext.max};
  });
  out.samples_per_sphere = f.dim() == 1 ? 2 : o.samples;
  double d = kInf, q = 0.0;
  for (const auto& pr : out.per_radius) {
    d = std::min(d, pr.d);
    q = std::max(q, pr.q);
  }
  out.d_p = d > o.divergence_threshold ? ExtendedReal::pos_inf() : ExtendedReal(d);
  out.q_p = q > o.divergence_threshold ? ExtendedReal::pos_inf() : ExtendedReal(q);
  return out;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Member:
      return "member";
    case Membership::NonMember:
      return "non_member";
    case Membership::Undecided:
      return "undecided";
  }
  return "?";
}

MembershipResult Sigma_membership(const MapSpec& f, const Point& p, PlanePoint lambda, double tol,
                                  const RateOptions& options) {
  if (!(tol > 0)) throw PreconditionError("Sigma_membership: tol must be positive");
  const MapSpec shifted = lambda_minus(lambda, f);
  RateOptions o = options;
  const auto rates = estimate_rates(shifted, p, o);
  MembershipResult out;
  out.margin = kInf;
  std::size_t below = 0;
  for (const auto& pr : rates.per_radius) {
    out.per_radius.push_back(pr.d);
    out.margin = std::min(out.margin, pr.d);
    if (pr.d < tol) ++below;
  }
  if (below == rates.per_radius.size()) {
    out.verdict = Membership::Member;
  } else if (below == 0) {
    out.verdict = Membership::NonMember;
  } else {
    out.verdict = Membership::Undecided;
  }
  return out;
}

std::vector<PlanePoint> c1_spectrum(const MapSpec& f, const Point& p) {
  const Eigen::MatrixXd j = f.jacobian(p);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(j, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericError("c1_spectrum: eigenvalue iteration failed");
  std::vector<PlanePoint> out;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    out.emplace_back(solver.eigenvalues()(k));
  }
  std::sort(out.begin(), out.end(), [](PlanePoint x, PlanePoint y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  return out;
}

std::vector<PlanePoint> distinct(std::vector<PlanePoint> values, double tol) {
  std::vector<PlanePoint> out;
  for (const auto& v : values) {
    if (std::none_of(out.begin(), out.end(), [&](PlanePoint u) { return distance(u, v) <= tol; })) {
      out.push_back(v);
    }
  }
  return out;
}

double hausdorff_distance(std::span<const PlanePoint> x, std::span<const PlanePoint> y) {
  if (x.empty() && y.empty()) return 0.0;
  if (x.empty() || y.empty()) return kInf;
  auto directed = [](std::span<const PlanePoint> a, std::span<const PlanePoint> b) {
    double h = 0.0;
    for (const auto& u : a) {
      double best = kInf;
      for (const auto& v : b) best = std::min(best, distance(u, v));
      h = std::max(h, best);
    }
    return h;
  };
  return std::max(directed(x, y), directed(y, x));
}

EquivalenceReport perturbation_equivalence_check(const MapSpec& f, const MapSpec& g, const Point& p,
                                                 double tol, const RateOptions& options) {
  if (f.dim() != g.dim()) throw PreconditionError("perturbation check: dimensions differ");
  EquivalenceReport out;
  const auto rates = estimate_rates(difference(f, g), p, options);
  out.q_difference = rates.q_p;
  out.applicable = rates.q_p < ExtendedReal(tol);
  if (!out.applicable) {
    out.method = "inapplicable";
    return out;
  }

  if (f.dim() == 1) {
    auto sigma = [&](const MapSpec& h) {
      if (h.has_exact_dini()) return dini::sigma_1d(dini::exact(h, p(0)));
      return dini::sigma_1d(dini::estimate(h, p(0)).quad);
    };
    const auto sf = sigma(f);
    const auto sg = sigma(g);
    out.method = "dini_interval";
    if (sf.is_empty() || sg.is_empty()) {
      out.distance = sf.is_empty() && sg.is_empty() ? 0.0 : kInf;
    } else {
      const auto& a = sf.parts().front();
      const auto& b = sg.parts().front();
      out.distance = std::max(interval_endpoint_gap(a.lo, b.lo), interval_endpoint_gap(a.hi, b.hi));
    }
    return out;
  }

  if (f.is_planar()) {
    const double r = options.tail_radii().back();
    auto curve = [&](const MapSpec& h) {
      if (h.homogeneous() && h.basepoint().isApprox(p, 0.0) && p.isZero(0.0)) {
        return homog2d::sigma_curve(h);
      }
      return homog2d::blowup_curve(translate_to_origin(h, p), r);
    };
    out.method = "sigma_curve";
    out.distance = homog2d::hausdorff_distance(curve(f), curve(g));
    return out;
  }

  if (f.has_jacobian() && g.has_jacobian()) {
    const auto ef = c1_spectrum(f, p);
    const auto eg = c1_spectrum(g, p);
    out.method = "jacobian_eigenvalues";
    out.distance = hausdorff_distance(ef, eg);
    return out;
  }
  out.method = "unavailable";
  return out;
}

const char* to_string(ScanVerdict v) {
  switch (v) {
    case ScanVerdict::Candidate:
      return "candidate";
    case ScanVerdict::Rejected:
      return "rejected";
    case ScanVerdict::Undecided:
      return "undecided";
  }
  return "?";
}

ScanResult bifurcation_scan(const MapSpec& f, std::span<const PlanePoint> grid, const ScanOptions& o) {
  if (o.radii.empty() || !(o.tol > 0)) throw PreconditionError("bifurcation_scan: need radii and tol > 0");
  const Point p = f.basepoint();
  const Point fp = eval(f, p);
  if (fp.norm() > 1e-12) throw PreconditionError("bifurcation_scan: f must vanish at its base point");

  ScanResult out;
  out.points.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    ScanPoint& sp = out.points[i];
    sp.lambda = grid[i];
    for (double r : o.radii) {
      auto residual = [&](const Point& x) {
        return (scalar_action(sp.lambda, r * x) - (eval(f, p + r * x) - fp)).norm() / r;
      };
      sp.residuals.push_back(sphere_extrema(residual, f.dim(), o.samples, o.seed, true, false).min);
    }
    const std::size_t below = static_cast<std::size_t>(
        std::count_if(sp.residuals.begin(), sp.residuals.end(), [&](double v) { return v < o.tol; }));
    if (sp.residuals.back() < o.tol && sp.residuals.back() <= sp.residuals.front() + 1e-12) {
      sp.verdict = ScanVerdict::Candidate;
    } else if (below == 0) {
      sp.verdict = ScanVerdict::Rejected;
    } else {
      sp.verdict = ScanVerdict::Undecided;
    }
    if (sp.verdict == ScanVerdict::Candidate && o.verify_containment) {
      RateOptions ro;
      ro.seed = o.seed;
      ro.samples = o.samples;
      sp.sigma = Sigma_membership(f, p, sp.lambda, o.tol, ro).verdict;
    }
  });
  for (const auto& sp : out.points) {
    if (sp.verdict == ScanVerdict::Candidate) {
      ++out.candidates;
      if (sp.sigma && *sp.sigma != Membership::Member) out.candidates_in_Sigma = false;
    }
    if (sp.verdict == ScanVerdict::Undecided) ++out.undecided;
  }
  return out;
}

std::vector<PlanePoint> lattice(double xmin, double xmax, double ymin, double ymax, std::size_t nx,
                                std::size_t ny) {
  if (nx < 1 || ny < 1) throw UsageError("lattice: need at least one point per axis");
  std::vector<PlanePoint> out;
  out.reserve(nx * ny);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    const double y = ny == 1 ? ymin : ymin + (ymax - ymin) * static_cast<double>(iy) / static_cast<double>(ny - 1);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double x = nx == 1 ? xmin : xmin + (xmax - xmin) * static_cast<double>(ix) / static_cast<double>(nx - 1);
      out.emplace_back(x, y);
    }
  }
  return out;
}

}  // namespace specpoint::estimators
