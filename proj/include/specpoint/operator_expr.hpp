// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "specpoint/extended_real.hpp"

namespace specpoint {

/// Closed interval of extended reals holding what is known about a rate.
struct RateInterval {
  ExtendedReal lo = 0.0;
  ExtendedReal hi = ExtendedReal::pos_inf();

  static RateInterval exact(ExtendedReal v) { return {v, v}; }
  static RateInterval unknown() { return {0.0, ExtendedReal::pos_inf()}; }
  bool is_exact() const { return lo == hi; }
  bool contains(ExtendedReal v) const { return lo <= v && v <= hi; }
  bool contains(const RateInterval& other) const { return lo <= other.lo && other.hi <= hi; }
  std::string to_string() const;
  friend bool operator==(const RateInterval&, const RateInterval&) = default;
};

/// Symbolic operator on an infinite-dimensional Banach space, built from atoms
/// with known measure-of-noncompactness behaviour.
struct OperatorExpr {
  enum class Node { Atom, Sum, Compose, Scale };
  enum class Atom {
    Identity,
    ScalarMultiple,           ///< c I
    IsometryOntoCodim,        ///< linear isometry onto a closed subspace of codimension k
    CompactLinear,
    FiniteRank,
    LocallyCompactNonlinear,
    KnownRates,
    Opaque,                   ///< unknown atom; contributes [0, +inf] everywhere
  };

  Node node = Node::Atom;
  Atom atom = Atom::Opaque;
  double scalar = 0.0;    ///< c of ScalarMultiple and Scale
  int count = 0;          ///< k of IsometryOntoCodim, r of FiniteRank
  RateInterval alpha = RateInterval::unknown();  ///< KnownRates only
  RateInterval omega = RateInterval::unknown();
  RateInterval d = RateInterval::unknown();
  RateInterval q = RateInterval::unknown();
  std::string name;
  /// Sum: {f, g}; Compose: {outer, inner} meaning outer o inner; Scale: {f}.
  std::vector<std::shared_ptr<const OperatorExpr>> children;

  using Ptr = std::shared_ptr<const OperatorExpr>;

  static Ptr identity();
  static Ptr scalar_multiple(double c);
  static Ptr isometry(int codim);
  static Ptr compact_linear();
  static Ptr finite_rank(int rank);
  static Ptr locally_compact();
  static Ptr known(RateInterval alpha, RateInterval omega,
                   RateInterval d = RateInterval::unknown(),
                   RateInterval q = RateInterval::unknown());
  static Ptr opaque(std::string name);
  static Ptr sum(Ptr f, Ptr g);
  static Ptr compose(Ptr outer, Ptr inner);
  static Ptr scale(double c, Ptr f);
};

/// Text form accepted by parse_operator_expr.
std::string to_string(const OperatorExpr& e);

/// Parses the plain-text operator syntax:
///
///   expr   := term { "+" term }
///   term   := factor { ("o" | "∘") factor }        composition, left to right
///   factor := "scale" "(" number "," expr ")" | "(" expr ")" | atom
///   atom   := name [ "(" arg { "," arg } ")" ]
///   arg    := value | key "=" value
///   value  := number | "inf" | "[" number "," number "]"
///
/// Atom names: identity (id), scalar(c), isometry(k), compact, finite_rank(r),
/// local_compact, known(alpha, omega[, d, q]) or known(alpha=..., omega=...).
/// Any other name becomes an opaque atom. Throws UsageError on syntax errors.
OperatorExpr::Ptr parse_operator_expr(std::string_view text);

/// What one bottom-up pass of the rate rules derives for an expression.
struct RateBounds {
  RateInterval alpha;
  RateInterval omega;
  RateInterval d;
  RateInterval q;
  /// Applied rules, innermost first.
  std::vector<std::string> derivation;
};

/// Bounds on the local measure-of-noncompactness rates alpha_p, omega_p and
/// the growth rates d_p, |.|_p of an operator expression. Rules used:
///
///   scale:    alpha(c f) = |c| alpha(f), same for omega, d, q
///   sum:      |alpha(f) - alpha(g)| <= alpha(f+g) <= alpha(f) + alpha(g)
///             omega(f) - alpha(g) <= omega(f+g) <= omega(f) + alpha(g) (both orders)
///             d(f) - q(g) <= d(f+g) <= d(f) + q(g) (both orders), q(f+g) <= q(f) + q(g)
///   compose:  alpha(g f) <= alpha(g) alpha(f)
///             omega(g) omega(f) <= omega(g f) <= alpha(g) omega(f)
///             d(g) d(f) <= d(g f),  q(g f) <= q(g) q(f)
///   always:   0 <= omega <= alpha, 0 <= d <= q
///   atoms:    compact / finite-rank / locally compact maps have alpha = 0;
///             a linear isometry has alpha = omega = d = q = 1;
///             a compact linear map has d <= omega = 0.
RateBounds mnc_bounds(const OperatorExpr& e);

}  // namespace specpoint
