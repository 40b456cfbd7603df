// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specpoint/extended_real.hpp"
#include "specpoint/map_spec.hpp"

namespace specpoint::estimators {

/// Geometric radius schedule r_k = r_max ratio^k down to r_min; only the last
/// `tail` radii are sampled.
struct RateOptions {
  double r_max = 1e-1;
  double r_min = 1e-6;
  double ratio = 0.5;
  std::size_t tail = 6;
  std::size_t samples = 1024;
  /// Polish the extremal sphere samples with a compass search.
  bool polish = true;
  double divergence_threshold = 1e6;
  std::uint64_t seed = 0;

  std::vector<double> tail_radii() const;
};

struct RadiusRates {
  double radius = 0.0;
  double d = 0.0;  ///< min over the sphere of |f(p + x) - f(p)| / r
  double q = 0.0;  ///< max over the sphere
};

/// Estimates of d_p(f) and |f|_p. In finite dimension q_p(f) = |f|_p.
struct LocalRates {
  ExtendedReal d_p;
  ExtendedReal q_p;
  std::vector<double> radii_used;
  std::size_t samples_per_sphere = 0;
  std::vector<RadiusRates> per_radius;
};

/// Sphere-sampling estimate of the lower and upper growth rates of f at p:
/// min and max over the tail radii of the sampled sphere extrema. Values
/// above the divergence threshold are reported as +inf.
LocalRates estimate_rates(const MapSpec& f, const Point& p, const RateOptions& options = {});

enum class Membership { Member, NonMember, Undecided };

const char* to_string(Membership m);

struct MembershipResult {
  Membership verdict = Membership::Undecided;
  /// Estimated d_p(lambda - f) (minimum over the tail radii).
  double margin = 0.0;
  std::vector<double> per_radius;
};

/// Decides lambda in Sigma(f, p) = {lambda : d_p(lambda - f) = 0}: Member when
/// every tail-radius estimate is below tol, NonMember when none is, Undecided
/// otherwise. Undecided is a genuine outcome, never coerced.
MembershipResult Sigma_membership(const MapSpec& f, const Point& p, PlanePoint lambda, double tol,
                                  const RateOptions& options = {});

/// sigma(f, p) for a map differentiable at p: the eigenvalues of the Jacobian,
/// sorted by real then imaginary part. Throws UnsupportedError without a
/// Jacobian provider and NumericError when the eigen solver fails.
std::vector<PlanePoint> c1_spectrum(const MapSpec& f, const Point& p);

/// Collapses values closer than tol into one representative.
std::vector<PlanePoint> distinct(std::vector<PlanePoint> values, double tol);

/// Symmetric Hausdorff distance between two finite point sets.
double hausdorff_distance(std::span<const PlanePoint> x, std::span<const PlanePoint> y);

struct EquivalenceReport {
  /// q_p(f - g) was below tolerance, so the spectra must coincide.
  bool applicable = false;
  ExtendedReal q_difference;
  /// Distance between the computed spectra of f and g, when a method exists.
  std::optional<double> distance;
  std::string method;
};

/// Checks spectral equivalence under a perturbation with vanishing rate:
/// estimates q_p(f - g); when below tol, compares the computed spectra
/// (Dini intervals in 1-D, Sigma curves or small-radius blow-up curves in the
/// plane, Jacobian eigenvalues otherwise).
EquivalenceReport perturbation_equivalence_check(const MapSpec& f, const MapSpec& g, const Point& p,
                                                 double tol = 1e-3, const RateOptions& options = {});

struct ScanOptions {
  std::vector<double> radii{1e-2, 1e-3, 1e-4};
  double tol = 1e-2;
  std::size_t samples = 1024;
  bool verify_containment = true;
  std::uint64_t seed = 0;
};

enum class ScanVerdict { Candidate, Rejected, Undecided };

const char* to_string(ScanVerdict v);

struct ScanPoint {
  PlanePoint lambda;
  ScanVerdict verdict = ScanVerdict::Rejected;
  /// min over |x| = r of |lambda x - f_p(x)| / r, one per radius.
  std::vector<double> residuals;
  /// Sigma-membership of a candidate (empty for non-candidates).
  std::optional<Membership> sigma;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  std::size_t candidates = 0;
  std::size_t undecided = 0;
  /// Every candidate was confirmed as a Sigma member.
  bool candidates_in_Sigma = true;
};

/// Numerical search for bifurcation candidates of lambda x = f(x) at the base
/// point p (which needs f(p) = 0): for every lambda and radius r, minimizes
/// the relative residual over the sphere |x| = r with sphere sampling plus a
/// derivative-free local search seeded at the best sample. A lambda is a
/// Candidate when the residual at the smallest radius is below tol and no
/// larger than at the first radius, Rejected when all residuals exceed tol,
/// Undecided otherwise.
ScanResult bifurcation_scan(const MapSpec& f, std::span<const PlanePoint> grid,
                            const ScanOptions& options = {});

/// Lattice of nx x ny points spanning [xmin, xmax] x [ymin, ymax] inclusive.
std::vector<PlanePoint> lattice(double xmin, double xmax, double ymin, double ymax, std::size_t nx,
                                std::size_t ny);

}  // namespace specpoint::estimators
