// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include "specpoint/operator_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

#include "specpoint/errors.hpp"

namespace specpoint {
namespace {

using Ptr = OperatorExpr::Ptr;

Ptr make(OperatorExpr e) { return std::make_shared<const OperatorExpr>(std::move(e)); }

OperatorExpr make_atom(OperatorExpr::Atom a, std::string name) {
  OperatorExpr e;
  e.node = OperatorExpr::Node::Atom;
  e.atom = a;
  e.name = std::move(name);
  return e;
}

std::string number(double v) { return ExtendedReal(v).to_string(); }

// Extended-real helpers that never form inf - inf.
ExtendedReal sub_floor(ExtendedReal x, ExtendedReal y) {
  // x - y used as a lower bound; an undefined difference gives no information.
  if (x.is_pos_inf() && y.is_pos_inf()) return 0.0;
  return x - y;
}

ExtendedReal nonneg(ExtendedReal x) { return max(x, ExtendedReal(0.0)); }

RateInterval scale_interval(double c, const RateInterval& r) {
  const double a = std::abs(c);
  return {a * r.lo, a * r.hi};
}

/// Lower/upper bounds for f + g where one rate is perturbed by another:
/// base(f) - pert(g) <= rate(f+g) <= base(f) + pert(g).
RateInterval perturbed(const RateInterval& base, const RateInterval& pert) {
  return {nonneg(sub_floor(base.lo, pert.hi)), base.hi + pert.hi};
}

RateInterval intersect(const RateInterval& x, const RateInterval& y) {
  return {max(x.lo, y.lo), min(x.hi, y.hi)};
}

void enforce_order(RateBounds& b) {
  // 0 <= omega <= alpha and 0 <= d <= q.
  b.alpha.lo = nonneg(b.alpha.lo);
  b.omega.lo = nonneg(b.omega.lo);
  b.omega.hi = min(b.omega.hi, b.alpha.hi);
  b.alpha.lo = max(b.alpha.lo, b.omega.lo);
  b.d.lo = nonneg(b.d.lo);
  b.d.hi = min(b.d.hi, b.q.hi);
  b.q.lo = max(b.q.lo, b.d.lo);
}

RateBounds atom_bounds(const OperatorExpr& e) {
  using A = OperatorExpr::Atom;
  RateBounds b{RateInterval::unknown(), RateInterval::unknown(), RateInterval::unknown(),
               RateInterval::unknown(), {}};
  switch (e.atom) {
    case A::Identity:
      b.alpha = b.omega = b.d = b.q = RateInterval::exact(1.0);
      b.derivation.push_back("identity: alpha = omega = d = q = 1");
      break;
    case A::ScalarMultiple: {
      const double c = std::abs(e.scalar);
      b.alpha = b.omega = b.d = b.q = RateInterval::exact(c);
      b.derivation.push_back("scalar(" + number(e.scalar) + "): all rates = |c| = " + number(c));
      break;
    }
    case A::IsometryOntoCodim:
      b.alpha = b.omega = b.d = b.q = RateInterval::exact(1.0);
      b.derivation.push_back("isometry(" + std::to_string(e.count) +
                             "): linear isometry, alpha = omega = d = q = 1");
      break;
    case A::CompactLinear:
    case A::FiniteRank:
      b.alpha = b.omega = RateInterval::exact(0.0);
      b.d = RateInterval::exact(0.0);
      b.derivation.push_back(std::string(e.atom == A::CompactLinear ? "compact" : "finite_rank") +
                             ": compact linear, alpha = omega = 0, d <= omega = 0");
      break;
    case A::LocallyCompactNonlinear:
      b.alpha = b.omega = RateInterval::exact(0.0);
      b.derivation.push_back("local_compact: locally compact, alpha = 0, omega <= alpha = 0");
      break;
    case A::KnownRates:
      b.alpha = e.alpha;
      b.omega = e.omega;
      b.d = e.d;
      b.q = e.q;
      b.derivation.push_back("known: alpha in " + e.alpha.to_string() + ", omega in " +
                             e.omega.to_string());
      break;
    case A::Opaque:
      b.derivation.push_back(e.name + ": no rule");
      break;
  }
  return b;
}

RateBounds bounds(const OperatorExpr& e) {
  using N = OperatorExpr::Node;
  RateBounds out;
  switch (e.node) {
    case N::Atom:
      out = atom_bounds(e);
      break;
    case N::Scale: {
      out = bounds(*e.children.at(0));
      out.alpha = scale_interval(e.scalar, out.alpha);
      out.omega = scale_interval(e.scalar, out.omega);
      out.d = scale_interval(e.scalar, out.d);
      out.q = scale_interval(e.scalar, out.q);
      out.derivation.push_back("scale(" + number(e.scalar) + "): rates multiplied by |c|");
      break;
    }
    case N::Sum: {
      const RateBounds f = bounds(*e.children.at(0));
      const RateBounds g = bounds(*e.children.at(1));
      out.derivation = f.derivation;
      out.derivation.insert(out.derivation.end(), g.derivation.begin(), g.derivation.end());
      // |alpha(f) - alpha(g)| >= distance between the two intervals.
      const ExtendedReal gap =
          nonneg(max(sub_floor(f.alpha.lo, g.alpha.hi), sub_floor(g.alpha.lo, f.alpha.hi)));
      out.alpha = {gap, f.alpha.hi + g.alpha.hi};
      out.derivation.push_back("sum: |alpha(f) - alpha(g)| <= alpha(f+g) <= alpha(f) + alpha(g)");
      out.omega = intersect(perturbed(f.omega, g.alpha), perturbed(g.omega, f.alpha));
      out.derivation.push_back("sum: omega(f) - alpha(g) <= omega(f+g) <= omega(f) + alpha(g)");
      out.d = intersect(perturbed(f.d, g.q), perturbed(g.d, f.q));
      const ExtendedReal qgap = nonneg(max(sub_floor(f.q.lo, g.q.hi), sub_floor(g.q.lo, f.q.hi)));
      out.q = {qgap, f.q.hi + g.q.hi};
      out.derivation.push_back("sum: d(f) - |g| <= d(f+g) <= d(f) + |g|, |f+g| <= |f| + |g|");
      break;
    }
    case N::Compose: {
      const RateBounds g = bounds(*e.children.at(0));  // outer
      const RateBounds f = bounds(*e.children.at(1));  // inner
      out.derivation = f.derivation;
      out.derivation.insert(out.derivation.end(), g.derivation.begin(), g.derivation.end());
      out.alpha = {0.0, g.alpha.hi * f.alpha.hi};
      out.derivation.push_back("compose: alpha(g f) <= alpha(g) alpha(f)");
      out.omega = {g.omega.lo * f.omega.lo, g.alpha.hi * f.omega.hi};
      out.derivation.push_back("compose: omega(g) omega(f) <= omega(g f) <= alpha(g) omega(f)");
      out.d = {g.d.lo * f.d.lo, ExtendedReal::pos_inf()};
      out.q = {0.0, g.q.hi * f.q.hi};
      out.derivation.push_back("compose: d(g) d(f) <= d(g f), |g f| <= |g| |f|");
      break;
    }
  }
  enforce_order(out);
  return out;
}

// Parser ---------------------------------------------------------------------

struct Value {
  RateInterval interval;
  bool is_scalar = true;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Ptr parse() {
    Ptr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw UsageError("operator expression: " + what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(s_[start]))) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  /// The composition operator: "∘" or a standalone "o".
  bool accept_compose() {
    skip_ws();
    if (accept("\xE2\x88\x98")) return true;
    if (pos_ < s_.size() && s_[pos_] == 'o') {
      const std::size_t next = pos_ + 1;
      if (next == s_.size() ||
          !(std::isalnum(static_cast<unsigned char>(s_[next])) || s_[next] == '_')) {
        pos_ = next;
        return true;
      }
    }
    return false;
  }

  double scalar() {
    skip_ws();
    if (accept("inf") || accept("+inf")) return std::numeric_limits<double>::infinity();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                s_[pos_] == '-' || s_[pos_] == '+' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
    }
    double v = 0.0;
    const char* first = s_.data() + start;
    if (start < s_.size() && s_[start] == '+') ++first;
    auto [end, ec] = std::from_chars(first, s_.data() + pos_, v);
    if (start == pos_ || ec != std::errc() || end != s_.data() + pos_) {
      pos_ = start;
      fail("expected a number");
    }
    return v;
  }

  Value value() {
    if (accept("[")) {
      const double lo = scalar();
      expect(",");
      const double hi = scalar();
      expect("]");
      if (hi < lo) fail("interval with lower > upper");
      return {{lo, hi}, false};
    }
    const double v = scalar();
    return {RateInterval::exact(v), true};
  }

  Ptr expr() {
    Ptr e = term();
    while (accept("+")) e = OperatorExpr::sum(e, term());
    return e;
  }

  Ptr term() {
    Ptr e = factor();
    while (accept_compose()) e = OperatorExpr::compose(e, factor());
    return e;
  }

  Ptr factor() {
    if (accept("(")) {
      Ptr e = expr();
      expect(")");
      return e;
    }
    const std::size_t start = pos_;
    const std::string name = ident();
    if (name == "scale") {
      expect("(");
      const double c = scalar();
      expect(",");
      Ptr e = expr();
      expect(")");
      return OperatorExpr::scale(c, e);
    }
    std::vector<Value> positional;
    std::map<std::string, Value> named;
    if (accept("(")) {
      if (!accept(")")) {
        do {
          skip_ws();
          const std::size_t arg_start = pos_;
          if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])) &&
              s_.substr(pos_, 3) != "inf") {
            const std::string key = ident();
            expect("=");
            named[key] = value();
          } else {
            pos_ = arg_start;
            positional.push_back(value());
          }
        } while (accept(","));
        expect(")");
      }
    }
    auto need_scalars = [&](std::size_t n) {
      if (positional.size() != n || !named.empty()) {
        pos_ = start;
        fail("atom '" + name + "' takes " + std::to_string(n) + " numeric argument(s)");
      }
      for (const auto& v : positional) {
        if (!v.is_scalar) fail("atom '" + name + "' takes plain numbers");
      }
    };
    auto integer = [&](const Value& v) {
      const double x = v.interval.lo.value();
      if (x != std::floor(x) || x < 0 || x > 1e9) fail("expected a non-negative integer");
      return static_cast<int>(x);
    };
    if (name == "identity" || name == "id") {
      need_scalars(0);
      return OperatorExpr::identity();
    }
    if (name == "scalar") {
      need_scalars(1);
      return OperatorExpr::scalar_multiple(positional[0].interval.lo.value());
    }
    if (name == "isometry") {
      if (positional.empty()) return OperatorExpr::isometry(0);
      need_scalars(1);
      return OperatorExpr::isometry(integer(positional[0]));
    }
    if (name == "compact") {
      need_scalars(0);
      return OperatorExpr::compact_linear();
    }
    if (name == "finite_rank") {
      need_scalars(1);
      return OperatorExpr::finite_rank(integer(positional[0]));
    }
    if (name == "local_compact" || name == "locally_compact") {
      need_scalars(0);
      return OperatorExpr::locally_compact();
    }
    if (name == "known") {
      static const char* keys[] = {"alpha", "omega", "d", "q"};
      RateInterval r[4] = {RateInterval::unknown(), RateInterval::unknown(), RateInterval::unknown(),
                           RateInterval::unknown()};
      if (positional.size() > 4) fail("known takes at most 4 positional arguments");
      for (std::size_t k = 0; k < positional.size(); ++k) r[k] = positional[k].interval;
      for (const auto& [key, v] : named) {
        std::size_t k = 0;
        while (k < 4 && key != keys[k]) ++k;
        if (k == 4) fail("unknown key '" + key + "' for known()");
        r[k] = v.interval;
      }
      return OperatorExpr::known(r[0], r[1], r[2], r[3]);
    }
    return OperatorExpr::opaque(name);
  }
};

}  // namespace

std::string RateInterval::to_string() const {
  return "[" + lo.to_string() + ", " + hi.to_string() + "]";
}

Ptr OperatorExpr::identity() { return make(make_atom(Atom::Identity, "identity")); }

Ptr OperatorExpr::scalar_multiple(double c) {
  auto e = make_atom(Atom::ScalarMultiple, "scalar");
  e.scalar = c;
  return make(std::move(e));
}

Ptr OperatorExpr::isometry(int codim) {
  auto e = make_atom(Atom::IsometryOntoCodim, "isometry");
  e.count = codim;
  return make(std::move(e));
}

Ptr OperatorExpr::compact_linear() { return make(make_atom(Atom::CompactLinear, "compact")); }

Ptr OperatorExpr::finite_rank(int rank) {
  auto e = make_atom(Atom::FiniteRank, "finite_rank");
  e.count = rank;
  return make(std::move(e));
}

Ptr OperatorExpr::locally_compact() { return make(make_atom(Atom::LocallyCompactNonlinear, "local_compact")); }

Ptr OperatorExpr::known(RateInterval alpha, RateInterval omega, RateInterval d, RateInterval q) {
  for (const auto* r : {&alpha, &omega, &d, &q}) {
    if (r->hi < r->lo) throw UsageError("known(): interval with lower > upper");
  }
  auto e = make_atom(Atom::KnownRates, "known");
  e.alpha = alpha;
  e.omega = omega;
  e.d = d;
  e.q = q;
  return make(std::move(e));
}

Ptr OperatorExpr::opaque(std::string name) { return make(make_atom(Atom::Opaque, std::move(name))); }

Ptr OperatorExpr::sum(Ptr f, Ptr g) {
  OperatorExpr e;
  e.node = Node::Sum;
  e.name = "+";
  e.children = {std::move(f), std::move(g)};
  return make(std::move(e));
}

Ptr OperatorExpr::compose(Ptr outer, Ptr inner) {
  OperatorExpr e;
  e.node = Node::Compose;
  e.name = "o";
  e.children = {std::move(outer), std::move(inner)};
  return make(std::move(e));
}

Ptr OperatorExpr::scale(double c, Ptr f) {
  OperatorExpr e;
  e.node = Node::Scale;
  e.name = "scale";
  e.scalar = c;
  e.children = {std::move(f)};
  return make(std::move(e));
}

std::string to_string(const OperatorExpr& e) {
  using N = OperatorExpr::Node;
  using A = OperatorExpr::Atom;
  switch (e.node) {
    case N::Sum:
      return "(" + to_string(*e.children[0]) + " + " + to_string(*e.children[1]) + ")";
    case N::Compose:
      return "(" + to_string(*e.children[0]) + " o " + to_string(*e.children[1]) + ")";
    case N::Scale:
      return "scale(" + number(e.scalar) + ", " + to_string(*e.children[0]) + ")";
    case N::Atom:
      break;
  }
  switch (e.atom) {
    case A::ScalarMultiple:
      return "scalar(" + number(e.scalar) + ")";
    case A::IsometryOntoCodim:
    case A::FiniteRank:
      return e.name + "(" + std::to_string(e.count) + ")";
    case A::KnownRates: {
      auto iv = [](const RateInterval& r) {
        return r.is_exact() ? r.lo.to_string() : "[" + r.lo.to_string() + "," + r.hi.to_string() + "]";
      };
      return "known(alpha=" + iv(e.alpha) + ", omega=" + iv(e.omega) + ", d=" + iv(e.d) +
             ", q=" + iv(e.q) + ")";
    }
    default:
      return e.name;
  }
}

OperatorExpr::Ptr parse_operator_expr(std::string_view text) { return Parser(text).parse(); }

RateBounds mnc_bounds(const OperatorExpr& e) { return bounds(e); }

}  // namespace specpoint
