// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include "specpoint/homog2d.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include "specpoint/errors.hpp"
#include "specpoint/estimators.hpp"
#include "specpoint/sampling.hpp"

namespace specpoint::homog2d {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_planar(const MapSpec& f, const char* op) {
  if (!f.is_planar()) throw PreconditionError(std::string(op) + ": map must be planar");
}

void require_homogeneous(const MapSpec& f, const char* op) {
  require_planar(f, op);
  if (!f.homogeneous()) {
    throw PreconditionError(std::string(op) + ": '" + f.name() +
                            "' is not flagged positively homogeneous");
  }
}

/// Adaptive sampling of theta -> value(theta) on [0, 2 pi), bisecting every
/// arc whose chord exceeds the bound.
SigmaCurve refine_curve(const std::function<PlanePoint(double)>& value, const CurveOptions& o) {
  if (o.samples < 3) throw UsageError("sigma_curve: need at least 3 samples");
  SigmaCurve curve;
  curve.chord_bound = o.chord_bound;
  std::vector<CurveSample> current;
  current.reserve(o.samples);
  for (std::size_t k = 0; k < o.samples; ++k) {
    const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(o.samples);
    current.push_back({theta, value(theta)});
  }
  for (;;) {
    std::vector<CurveSample> next;
    next.reserve(current.size() * 2);
    std::size_t budget = o.max_samples > current.size() ? o.max_samples - current.size() : 0;
    bool inserted = false;
    for (std::size_t k = 0; k < current.size(); ++k) {
      const CurveSample& a = current[k];
      const CurveSample& b = current[(k + 1) % current.size()];
      next.push_back(a);
      const double theta_b = k + 1 == current.size() ? b.theta + kTwoPi : b.theta;
      if (distance(a.lambda, b.lambda) <= o.chord_bound || theta_b - a.theta <= 1e-13) continue;
      if (budget == 0) {
        curve.capped = true;
        continue;
      }
      const double mid = 0.5 * (a.theta + theta_b);
      next.push_back({mid, value(mid)});
      --budget;
      inserted = true;
    }
    current = std::move(next);
    if (!inserted || curve.capped) break;
  }
  curve.samples = std::move(current);
  return curve;
}

PlanePoint eigen_parameter(const MapSpec& f, double theta) {
  const PlanePoint z = unit_circle(theta);
  return as_plane(eval(f, as_point(z))) * z.conj();
}

/// Golden-section polish of a smooth 1-D function on [lo, hi]; returns the
/// best value found (minimum when sign = 1, maximum when sign = -1).
double golden_extremum(const std::function<double(double)>& g, double lo, double hi, double sign) {
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = sign * g(c);
  double gd = sign * g(d);
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = sign * g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = sign * g(d);
    }
  }
  return sign * std::min({gc, gd, sign * g(lo), sign * g(hi)});
}

double angle_increment(PlanePoint from, PlanePoint to) {
  // arg(to / from) in (-pi, pi]
  const double cross = from.a * to.b - from.b * to.a;
  const double dot = from.a * to.a + from.b * to.b;
  return std::atan2(cross, dot);
}

WindingResult wind(const std::function<PlanePoint(double)>& gamma, double radius,
                   const WindingOptions& o) {
  if (!(radius > 0)) throw PreconditionError("winding_number: radius must be positive");
  if (o.samples < 4) throw UsageError("winding_number: need at least 4 samples");
  WindingResult out;
  out.margin = kInf;
  const double tol = o.margin_tolerance * radius;
  auto sample = [&](double theta) {
    const PlanePoint g = gamma(theta);
    ++out.samples;
    out.margin = std::min(out.margin, g.abs());
    if (out.margin < tol || out.margin == 0.0) {
      throw AdmissibilityError("winding_number: boundary curve passes within " +
                                   std::to_string(out.margin) + " of 0",
                               out.margin);
    }
    return g;
  };

  struct Arc {
    double t0, t1;
    PlanePoint g0, g1;
  };
  std::vector<PlanePoint> base;
  base.reserve(o.samples);
  for (std::size_t k = 0; k < o.samples; ++k) {
    base.push_back(sample(kTwoPi * static_cast<double>(k) / static_cast<double>(o.samples)));
  }
  double total = 0.0;
  std::vector<Arc> stack;
  for (std::size_t k = 0; k < o.samples; ++k) {
    const double t0 = kTwoPi * static_cast<double>(k) / static_cast<double>(o.samples);
    const double t1 = kTwoPi * static_cast<double>(k + 1) / static_cast<double>(o.samples);
    stack.push_back({t0, t1, base[k], base[(k + 1) % o.samples]});
    while (!stack.empty()) {
      Arc arc = stack.back();
      stack.pop_back();
      const double inc = angle_increment(arc.g0, arc.g1);
      if (std::abs(inc) < std::numbers::pi / 2) {
        total += inc;
        continue;
      }
      if (arc.t1 - arc.t0 < 1e-14 || out.samples >= o.max_samples) {
        throw AdmissibilityError("winding_number: cannot resolve the angular increment", out.margin);
      }
      const double mid = 0.5 * (arc.t0 + arc.t1);
      const PlanePoint gm = sample(mid);
      stack.push_back({mid, arc.t1, gm, arc.g1});
      stack.push_back({arc.t0, mid, arc.g0, gm});
    }
  }
  out.winding = static_cast<int>(std::lround(total / kTwoPi));
  return out;
}

}  // namespace

std::vector<PlanePoint> SigmaCurve::points() const {
  std::vector<PlanePoint> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.lambda);
  return out;
}

double SigmaCurve::diameter() const {
  if (samples.empty()) return 0.0;
  // Bounding-box diagonal bounds the diameter within a factor sqrt(2); exact
  // pairwise search only on small sets.
  double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
  for (const auto& s : samples) {
    xmin = std::min(xmin, s.lambda.a);
    xmax = std::max(xmax, s.lambda.a);
    ymin = std::min(ymin, s.lambda.b);
    ymax = std::max(ymax, s.lambda.b);
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

double SigmaCurve::max_chord() const {
  double m = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const std::size_t next = k + 1 == samples.size() ? 0 : k + 1;
    if (next == 0 && !closed) break;
    m = std::max(m, distance(samples[k].lambda, samples[next].lambda));
  }
  return m;
}

SigmaCurve sigma_curve(const MapSpec& f, const CurveOptions& options) {
  require_homogeneous(f, "sigma_curve");
  return refine_curve([&f](double theta) { return eigen_parameter(f, theta); }, options);
}

SigmaCurve blowup_curve(const MapSpec& f, double radius, const CurveOptions& options) {
  require_planar(f, "blowup_curve");
  if (!(radius > 0)) throw PreconditionError("blowup_curve: radius must be positive");
  const Point p = f.basepoint();
  const Point fp = eval(f, p);
  return refine_curve(
      [&](double theta) {
        const PlanePoint z = unit_circle(theta);
        const Point y = (eval(f, p + radius * as_point(z)) - fp) / radius;
        return as_plane(y) * z.conj();
      },
      options);
}

PlaneRates d_and_quasinorm(const MapSpec& f, const CurveOptions& options) {
  require_homogeneous(f, "d_and_quasinorm");
  const SigmaCurve curve = sigma_curve(f, options);
  // |f(e^{i theta})| = |lambda(theta)|.
  auto norm_at = [&f](double theta) { return as_plane(eval(f, as_point(unit_circle(theta)))).abs(); };
  std::size_t imin = 0, imax = 0;
  for (std::size_t k = 0; k < curve.samples.size(); ++k) {
    if (curve.samples[k].lambda.abs() < curve.samples[imin].lambda.abs()) imin = k;
    if (curve.samples[k].lambda.abs() > curve.samples[imax].lambda.abs()) imax = k;
  }
  auto neighbours = [&](std::size_t k) {
    const std::size_t n = curve.samples.size();
    double lo = curve.samples[(k + n - 1) % n].theta;
    double hi = curve.samples[(k + 1) % n].theta;
    const double mid = curve.samples[k].theta;
    if (lo > mid) lo -= kTwoPi;
    if (hi < mid) hi += kTwoPi;
    return std::pair{lo, hi};
  };
  PlaneRates out;
  const auto [lo_min, hi_min] = neighbours(imin);
  const auto [lo_max, hi_max] = neighbours(imax);
  out.d = std::min(curve.samples[imin].lambda.abs(), golden_extremum(norm_at, lo_min, hi_min, 1.0));
  out.q = std::max(curve.samples[imax].lambda.abs(), golden_extremum(norm_at, lo_max, hi_max, -1.0));
  return out;
}

WindingResult winding_number(const MapSpec& f, PlanePoint lambda, double radius,
                             const WindingOptions& options) {
  require_planar(f, "winding_number");
  const Point p = f.basepoint();
  const Point fp = eval(f, p);
  return wind(
      [&](double theta) {
        const PlanePoint z = radius * unit_circle(theta);
        return lambda * z - as_plane(eval(f, p + as_point(z)) - fp);
      },
      radius, options);
}

WindingResult map_winding(const MapSpec& f, double radius, const WindingOptions& options) {
  require_planar(f, "map_winding");
  return wind([&](double theta) { return as_plane(eval(f, as_point(radius * unit_circle(theta)))); },
              radius, options);
}

const char* to_string(Label label) {
  switch (label) {
    case Label::InSpectrum:
      return "in_spectrum";
    case Label::Regular:
      return "regular";
    case Label::Band:
      return "band";
  }
  return "?";
}

PlanePoint PlaneSpectrum::cell_center(std::size_t ix, std::size_t iy) const {
  return {bounds.xmin + (static_cast<double>(ix) + 0.5) * dx(),
          bounds.ymin + (static_cast<double>(iy) + 0.5) * dy()};
}

std::size_t PlaneSpectrum::count(Label label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

std::vector<Label> PlaneSpectrum::filled_labels() const {
  std::vector<Label> out = labels;
  std::deque<std::size_t> queue;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (out[k] != Label::Band) queue.push_back(k);
  }
  const std::size_t n = resolution;
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    const std::size_t ix = k % n;
    const std::size_t iy = k / n;
    auto visit = [&](std::size_t j) {
      if (out[j] == Label::Band) {
        out[j] = out[k];
        queue.push_back(j);
      }
    };
    if (ix > 0) visit(k - 1);
    if (ix + 1 < n) visit(k + 1);
    if (iy > 0) visit(k - n);
    if (iy + 1 < n) visit(k + n);
  }
  return out;
}

PlaneSpectrum classify_plane(const MapSpec& f, const Bounds& bounds, std::size_t resolution,
                             std::optional<double> band_radius, const ClassifyOptions& options) {
  require_homogeneous(f, "classify_plane");
  if (resolution < 2 || !(bounds.xmax > bounds.xmin) || !(bounds.ymax > bounds.ymin)) {
    throw UsageError("classify_plane: need resolution >= 2 and nonempty bounds");
  }
  PlaneSpectrum out;
  out.bounds = bounds;
  out.resolution = resolution;
  out.curve = sigma_curve(f, options.curve);
  out.band_radius = band_radius.value_or(2.0 * std::hypot(out.dx(), out.dy()));
  if (!(out.band_radius >= 0)) throw UsageError("classify_plane: band radius must be >= 0");

  const std::size_t n = resolution;
  out.labels.assign(n * n, Label::Band);
  std::vector<std::uint8_t> violated(n * n, 0);
  const PolylineIndex index(out.curve, std::max(out.band_radius, 1e-12));

  parallel_for(n, [&](std::size_t iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      const PlanePoint lambda = out.cell_center(ix, iy);
      const std::size_t cell = iy * n + ix;
      if (index.distance_within(lambda, out.band_radius) < out.band_radius) continue;
      try {
        const auto w = winding_number(f, lambda, 1.0, options.winding);
        out.labels[cell] = w.winding != 0 ? Label::Regular : Label::InSpectrum;
      } catch (const AdmissibilityError&) {
        violated[cell] = 1;
      }
    }
  });
  out.band_violations = static_cast<std::size_t>(std::count(violated.begin(), violated.end(), 1));

  // Labels must be constant on each connected off-band component.
  std::vector<int> component(n * n, -1);
  std::deque<std::size_t> queue;
  std::vector<std::size_t> members;
  for (std::size_t start = 0; start < n * n; ++start) {
    if (out.labels[start] == Label::Band || component[start] >= 0) continue;
    const int id = static_cast<int>(out.components++);
    members.clear();
    queue.push_back(start);
    component[start] = id;
    while (!queue.empty()) {
      const std::size_t c = queue.front();
      queue.pop_front();
      members.push_back(c);
      const std::size_t cx = c % n, cy = c / n;
      const std::size_t nb[4] = {cx > 0 ? c - 1 : c, cx + 1 < n ? c + 1 : c, cy > 0 ? c - n : c,
                                 cy + 1 < n ? c + n : c};
      for (std::size_t m : nb) {
        if (m == c || out.labels[m] == Label::Band || component[m] >= 0) continue;
        component[m] = id;
        queue.push_back(m);
      }
    }
    const Label first = out.labels[members.front()];
    const bool mixed = std::any_of(members.begin(), members.end(),
                                   [&](std::size_t m) { return out.labels[m] != first; });
    if (mixed) {
      ++out.inconsistent_components;
      for (std::size_t m : members) out.labels[m] = Label::Band;
    }
  }
  return out;
}

RoucheSolution rouche_coincidence(const MapSpec& f, const MapSpec& k, double radius,
                                  const RoucheOptions& o) {
  require_planar(f, "rouche_coincidence");
  require_planar(k, "rouche_coincidence");
  if (!(radius > 0)) throw PreconditionError("rouche_coincidence: radius must be positive");

  WindingResult w;
  try {
    w = map_winding(f, radius);
  } catch (const AdmissibilityError& e) {
    throw PreconditionError(std::string("rouche_coincidence: f vanishes near the circle: ") + e.what());
  }
  if (w.winding == 0) throw PreconditionError("rouche_coincidence: f has winding number 0 on the circle");

  double min_f = kInf;
  for (std::size_t j = 0; j < o.precondition_samples; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(o.precondition_samples);
    min_f = std::min(min_f, eval(f, as_point(radius * unit_circle(theta))).norm());
  }
  double max_k = 0.0;
  for (const auto& z : disk_points(radius, o.precondition_samples, o.seed)) {
    max_k = std::max(max_k, eval(k, as_point(z)).norm());
  }
  for (std::size_t j = 0; j < o.precondition_samples; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(o.precondition_samples);
    max_k = std::max(max_k, eval(k, as_point(radius * unit_circle(theta))).norm());
  }
  if (!(max_k < min_f)) {
    throw PreconditionError("rouche_coincidence: sampled max |k| on the disk (" + std::to_string(max_k) +
                            ") is not below min |f| on the circle (" + std::to_string(min_f) + ")");
  }

  auto residual = [&](PlanePoint x) { return (eval(f, as_point(x)) - eval(k, as_point(x))).norm(); };
  static constexpr double kDirs[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                         {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
  RoucheSolution best{{0.0, 0.0}, kInf};
  const auto starts = disk_points(0.95 * radius, o.starts, o.seed + 1);
  for (const PlanePoint& start : starts) {
    PlanePoint x = start;
    double r = residual(x);
    double step = 0.25 * radius;
    while (step > 1e-16 * radius && r >= o.tolerance) {
      bool moved = false;
      for (const auto& d : kDirs) {
        const double s = d[0] != 0 && d[1] != 0 ? step / std::numbers::sqrt2 : step;
        const PlanePoint trial{x.a + s * d[0], x.b + s * d[1]};
        if (trial.abs() >= radius) continue;
        const double rt = residual(trial);
        if (rt < r) {
          x = trial;
          r = rt;
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.5;
    }
    if (r < best.residual) best = {x, r};
    if (best.residual < o.tolerance) return best;
  }
  throw SolverError("rouche_coincidence: no start reached the tolerance", best.residual);
}

double spectral_radius_bound(const MapSpec& f) {
  if (f.homogeneous() && f.is_planar()) return d_and_quasinorm(f).q;
  if (f.homogeneous()) {
    // sup of |f| over the unit sphere: dense directions, then local polish.
    const auto dirs = sphere_directions(f.dim(), 4096);
    auto neg_norm = [&f](const Point& x) { return -eval(f, x).norm(); };
    std::size_t best = 0;
    double best_value = kInf;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      const double v = neg_norm(dirs[j]);
      if (v < best_value) {
        best_value = v;
        best = j;
      }
    }
    return -sphere_compass_search(neg_norm, dirs[best]).value;
  }
  const auto rates = estimators::estimate_rates(f, f.basepoint());
  return rates.q_p.value();
}

SigmaCurve bifurcation_set_homog(const MapSpec& f, const CurveOptions& options) {
  return sigma_curve(f, options);
}

double segment_distance(PlanePoint z, PlanePoint a, PlanePoint b) {
  const double ex = b.a - a.a, ey = b.b - a.b;
  const double len2 = ex * ex + ey * ey;
  double t = 0.0;
  if (len2 > 0) t = std::clamp(((z.a - a.a) * ex + (z.b - a.b) * ey) / len2, 0.0, 1.0);
  return std::hypot(z.a - (a.a + t * ex), z.b - (a.b + t * ey));
}

PolylineIndex::PolylineIndex(std::vector<PlanePoint> points, bool closed, double cell)
    : points_(std::move(points)), cell_(cell) {
  if (points_.empty()) return;
  if (!(cell_ > 0)) throw UsageError("PolylineIndex: cell size must be positive");
  const std::size_t n = points_.size();
  for (std::size_t k = 0; k + 1 < n; ++k) segments_.emplace_back(k, k + 1);
  if (closed && n > 1) segments_.emplace_back(n - 1, 0);
  if (n == 1) segments_.emplace_back(0, 0);
  double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
  for (const auto& p : points_) {
    xmin = std::min(xmin, p.a);
    xmax = std::max(xmax, p.a);
    ymin = std::min(ymin, p.b);
    ymax = std::max(ymax, p.b);
  }
  // Keep the bucket grid bounded; coarsen the cell on huge extents.
  const double extent = std::max(xmax - xmin, ymax - ymin);
  cell_ = std::max(cell_, extent / 2048.0);
  x0_ = xmin - cell_;
  y0_ = ymin - cell_;
  nx_ = static_cast<std::size_t>((xmax - x0_) / cell_) + 2;
  ny_ = static_cast<std::size_t>((ymax - y0_) / cell_) + 2;
  buckets_.assign(nx_ * ny_, {});
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const PlanePoint a = points_[segments_[s].first];
    const PlanePoint b = points_[segments_[s].second];
    const auto ix0 = static_cast<std::size_t>((std::min(a.a, b.a) - x0_) / cell_);
    const auto ix1 = static_cast<std::size_t>((std::max(a.a, b.a) - x0_) / cell_);
    const auto iy0 = static_cast<std::size_t>((std::min(a.b, b.b) - y0_) / cell_);
    const auto iy1 = static_cast<std::size_t>((std::max(a.b, b.b) - y0_) / cell_);
    for (std::size_t iy = iy0; iy <= iy1; ++iy) {
      for (std::size_t ix = ix0; ix <= ix1; ++ix) buckets_[iy * nx_ + ix].push_back(s);
    }
  }
}

PolylineIndex::PolylineIndex(const SigmaCurve& curve, double cell)
    : PolylineIndex(curve.points(), curve.closed, cell) {}

double PolylineIndex::distance_within(PlanePoint z, double cutoff) const {
  if (points_.empty()) return kInf;
  const double fx = (z.a - x0_) / cell_;
  const double fy = (z.b - y0_) / cell_;
  const long reach = static_cast<long>(std::ceil(cutoff / cell_));
  const long cx = static_cast<long>(std::floor(fx));
  const long cy = static_cast<long>(std::floor(fy));
  double best = kInf;
  for (long iy = cy - reach; iy <= cy + reach; ++iy) {
    if (iy < 0 || iy >= static_cast<long>(ny_)) continue;
    for (long ix = cx - reach; ix <= cx + reach; ++ix) {
      if (ix < 0 || ix >= static_cast<long>(nx_)) continue;
      for (std::size_t s : buckets_[static_cast<std::size_t>(iy) * nx_ + static_cast<std::size_t>(ix)]) {
        best = std::min(best, segment_distance(z, points_[segments_[s].first], points_[segments_[s].second]));
      }
    }
  }
  return best <= cutoff ? best : kInf;
}

double PolylineIndex::distance(PlanePoint z) const {
  double cutoff = cell_;
  for (int round = 0; round < 8; ++round, cutoff *= 2) {
    const double d = distance_within(z, cutoff);
    if (d < kInf) return d;
  }
  double best = kInf;
  for (const auto& [i, j] : segments_) best = std::min(best, segment_distance(z, points_[i], points_[j]));
  return best;
}

double hausdorff_distance(const SigmaCurve& x, const SigmaCurve& y) {
  const double cell = std::max(1e-6, std::max(x.diameter(), y.diameter()) / 512.0);
  const PolylineIndex ix(x, cell);
  const PolylineIndex iy(y, cell);
  double h = 0.0;
  for (const auto& s : x.samples) h = std::max(h, iy.distance(s.lambda));
  for (const auto& s : y.samples) h = std::max(h, ix.distance(s.lambda));
  return h;
}

}  // namespace specpoint::homog2d
