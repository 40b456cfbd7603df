// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "specpoint/map_spec.hpp"

namespace specpoint::homog2d {

struct CurveSample {
  double theta = 0.0;
  PlanePoint lambda;
};

/// Sampled image of theta -> f(e^{i theta}) e^{-i theta}, theta in [0, 2 pi).
/// For a positively homogeneous planar map this is the set of eigenvalues,
/// which is Sigma(f, 0).
struct SigmaCurve {
  std::vector<CurveSample> samples;
  bool closed = true;
  double chord_bound = 0.0;
  /// True when the sample cap stopped refinement before every chord met
  /// the bound.
  bool capped = false;

  std::vector<PlanePoint> points() const;
  /// Largest distance between two samples.
  double diameter() const;
  /// The curve collapses to a single point within `tol`.
  bool is_degenerate(double tol = 1e-9) const { return diameter() <= tol; }
  double max_chord() const;
};

struct CurveOptions {
  std::size_t samples = 4096;
  double chord_bound = 1e-3;
  std::size_t max_samples = std::size_t{1} << 20;
};

/// Sigma(f, 0) of a positively homogeneous planar map, adaptively refined by
/// bisecting every arc whose image chord exceeds options.chord_bound.
/// Throws PreconditionError when f is not flagged homogeneous or not planar.
SigmaCurve sigma_curve(const MapSpec& f, const CurveOptions& options = {});

/// Same curve for the rescaled map x -> (f(p + r x) - f(p)) / r at the base
/// point of f, which tends to the Sigma curve of the homogeneous part of f as
/// r -> 0. Needs no homogeneity.
SigmaCurve blowup_curve(const MapSpec& f, double radius, const CurveOptions& options = {});

/// d(f) = min and |f| = max of |f(x)| over the unit circle.
struct PlaneRates {
  double d = 0.0;
  double q = 0.0;
};
PlaneRates d_and_quasinorm(const MapSpec& f, const CurveOptions& options = {});

struct WindingOptions {
  std::size_t samples = 256;
  /// Relative to the radius: the curve must stay this far from 0.
  double margin_tolerance = 1e-9;
  std::size_t max_samples = std::size_t{1} << 20;
};

struct WindingResult {
  int winding = 0;
  /// Minimum |gamma| over all evaluated samples.
  double margin = 0.0;
  std::size_t samples = 0;
};

/// Winding number around 0 of theta -> lambda r e^{i theta} - f(r e^{i theta}).
/// Arcs are bisected until every angular increment is below pi/2. Throws
/// AdmissibilityError when the curve comes closer to 0 than the tolerance.
WindingResult winding_number(const MapSpec& f, PlanePoint lambda, double radius,
                             const WindingOptions& options = {});

/// Winding number around 0 of theta -> f(r e^{i theta}).
WindingResult map_winding(const MapSpec& f, double radius, const WindingOptions& options = {});

enum class Label : std::uint8_t { InSpectrum, Regular, Band };

const char* to_string(Label label);

struct Bounds {
  double xmin = -2.0;
  double xmax = 2.0;
  double ymin = -2.0;
  double ymax = 2.0;
};

/// Region classification of the spectrum over a lattice of cell centres.
struct PlaneSpectrum {
  SigmaCurve curve;
  Bounds bounds;
  std::size_t resolution = 0;  ///< cells per axis
  std::vector<Label> labels;   ///< row-major, row index = y
  double band_radius = 0.0;
  /// Off-band points whose winding computation was inadmissible.
  std::size_t band_violations = 0;
  /// Connected off-band components found with mixed labels (relabelled Band).
  std::size_t inconsistent_components = 0;
  std::size_t components = 0;

  double dx() const { return (bounds.xmax - bounds.xmin) / static_cast<double>(resolution); }
  double dy() const { return (bounds.ymax - bounds.ymin) / static_cast<double>(resolution); }
  double cell_area() const { return dx() * dy(); }
  PlanePoint cell_center(std::size_t ix, std::size_t iy) const;
  Label at(std::size_t ix, std::size_t iy) const { return labels[iy * resolution + ix]; }
  std::size_t count(Label label) const;
  /// Labels with every Band cell given the label of the nearest decided cell
  /// (breadth-first on the 4-neighbour grid). All Band if nothing is decided.
  std::vector<Label> filled_labels() const;
};

struct ClassifyOptions {
  CurveOptions curve;
  WindingOptions winding;
};

/// Labels each off-band lattice point Regular when the winding number of
/// lambda - f on the unit circle is nonzero and InSpectrum otherwise. Points
/// closer than band_radius to the Sigma curve are labelled Band. The default
/// band radius is twice the cell diagonal.
///
/// The "winding 0 => in spectrum" direction is a heuristic that holds for the
/// planar examples shipped with the library; nonzero winding does certify
/// regularity.
PlaneSpectrum classify_plane(const MapSpec& f, const Bounds& bounds, std::size_t resolution,
                             std::optional<double> band_radius = std::nullopt,
                             const ClassifyOptions& options = {});

struct RoucheOptions {
  std::size_t starts = 64;
  double tolerance = 1e-10;
  std::size_t precondition_samples = 4096;
  std::uint64_t seed = 0;
};

struct RoucheSolution {
  PlanePoint x;
  double residual = 0.0;
};

/// Finds x in the open disk of the given radius with f(x) = k(x), assuming f
/// has nonzero winding on the boundary circle and max |k| on the closed disk
/// is below min |f| on the circle (both checked by sampling; PreconditionError
/// otherwise). Multistart pattern search on |f - k|; SolverError with the best
/// residual when no start reaches the tolerance.
RoucheSolution rouche_coincidence(const MapSpec& f, const MapSpec& k, double radius,
                                  const RoucheOptions& options = {});

/// Upper bound for the spectral radius at the base point: |f|_p, which equals
/// q_p(f) in finite dimension. Homogeneous maps use the supremum over the unit
/// sphere; other maps the sphere-sampling rate estimator.
double spectral_radius_bound(const MapSpec& f);

/// Bifurcation points of a homogeneous planar map at 0. These are exactly the
/// eigenvalues, so the result is the Sigma curve.
SigmaCurve bifurcation_set_homog(const MapSpec& f, const CurveOptions& options = {});

/// Spatial index over the segments of a closed polyline for distance queries.
class PolylineIndex {
 public:
  PolylineIndex(std::vector<PlanePoint> points, bool closed, double cell);
  explicit PolylineIndex(const SigmaCurve& curve, double cell);

  /// Distance from z to the polyline, or +inf when larger than `cutoff`
  /// (cutoff must not exceed the cell size).
  double distance_within(PlanePoint z, double cutoff) const;
  /// Exact distance to the polyline (full scan).
  double distance(PlanePoint z) const;

  const std::vector<PlanePoint>& points() const noexcept { return points_; }

 private:
  std::vector<PlanePoint> points_;
  std::vector<std::pair<std::size_t, std::size_t>> segments_;
  double cell_ = 0.0;
  double x0_ = 0.0;
  double y0_ = 0.0;
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<std::vector<std::size_t>> buckets_;
};

/// Distance from z to the segment [a, b].
double segment_distance(PlanePoint z, PlanePoint a, PlanePoint b);

/// Symmetric Hausdorff distance between two sampled curves, measuring each
/// sample against the other curve's polyline.
double hausdorff_distance(const SigmaCurve& x, const SigmaCurve& y);

}  // namespace specpoint::homog2d
