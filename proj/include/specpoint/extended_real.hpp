// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <limits>
#include <span>
#include <string>

namespace specpoint {

/// A real number or one of the symbols +inf, -inf.
///
/// NaN is rejected at construction, so the ordering is total. Conventions
/// follow the usual extended-real ones: the supremum of the empty set is
/// -inf and the infimum is +inf; 0 * (+-inf) = 0 (the scaling convention for
/// rates such as |c| * alpha with c = 0); inf + (-inf) is undefined and
/// raises DomainError.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  ExtendedReal(double value);  // NOLINT(google-explicit-constructor)

  static constexpr ExtendedReal pos_inf() {
    return ExtendedReal(Raw{}, std::numeric_limits<double>::infinity());
  }
  static constexpr ExtendedReal neg_inf() {
    return ExtendedReal(Raw{}, -std::numeric_limits<double>::infinity());
  }

  constexpr double value() const noexcept { return value_; }
  constexpr bool is_finite() const noexcept {
    return value_ != std::numeric_limits<double>::infinity() &&
           value_ != -std::numeric_limits<double>::infinity();
  }
  constexpr bool is_pos_inf() const noexcept {
    return value_ == std::numeric_limits<double>::infinity();
  }
  constexpr bool is_neg_inf() const noexcept {
    return value_ == -std::numeric_limits<double>::infinity();
  }

  friend constexpr bool operator==(ExtendedReal x, ExtendedReal y) noexcept {
    return x.value_ == y.value_;
  }
  friend constexpr std::strong_ordering operator<=>(ExtendedReal x,
                                                    ExtendedReal y) noexcept {
    if (x.value_ < y.value_) return std::strong_ordering::less;
    if (x.value_ > y.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  ExtendedReal operator-() const noexcept { return ExtendedReal(Raw{}, -value_); }
  friend ExtendedReal operator+(ExtendedReal x, ExtendedReal y);
  friend ExtendedReal operator-(ExtendedReal x, ExtendedReal y) { return x + (-y); }
  friend ExtendedReal operator*(double c, ExtendedReal x);
  friend ExtendedReal operator*(ExtendedReal x, double c) { return c * x; }
  /// Product of two extended reals with 0 * inf = 0.
  friend ExtendedReal operator*(ExtendedReal x, ExtendedReal y);

  /// "inf", "-inf", or the shortest round-trip decimal form.
  std::string to_string() const;

 private:
  struct Raw {};
  constexpr ExtendedReal(Raw, double v) : value_(v) {}
  double value_ = 0.0;
};

/// Minimum of a finite collection; +inf for the empty one.
ExtendedReal min_of(std::span<const ExtendedReal> xs) noexcept;
/// Maximum of a finite collection; -inf for the empty one.
ExtendedReal max_of(std::span<const ExtendedReal> xs) noexcept;

inline ExtendedReal min(ExtendedReal x, ExtendedReal y) noexcept { return y < x ? y : x; }
inline ExtendedReal max(ExtendedReal x, ExtendedReal y) noexcept { return x < y ? y : x; }

/// Parses "inf", "+inf", "-inf" or a decimal number.
ExtendedReal parse_extended_real(const std::string& text);

}  // namespace specpoint
