// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include "specpoint/extended_real.hpp"

#include <charconv>
#include <cmath>

#include "specpoint/errors.hpp"

namespace specpoint {

ExtendedReal::ExtendedReal(double value) : value_(value) {
  if (std::isnan(value)) throw DomainError("ExtendedReal: NaN is not an extended real");
}

ExtendedReal operator+(ExtendedReal x, ExtendedReal y) {
  if ((x.is_pos_inf() && y.is_neg_inf()) || (x.is_neg_inf() && y.is_pos_inf())) {
    throw DomainError("ExtendedReal: inf + (-inf) is undefined");
  }
  return ExtendedReal(x.value_ + y.value_);
}

ExtendedReal operator*(double c, ExtendedReal x) {
  if (std::isnan(c)) throw DomainError("ExtendedReal: NaN scale factor");
  if (c == 0.0 || x.value_ == 0.0) return ExtendedReal(0.0);
  return ExtendedReal(c * x.value_);
}

ExtendedReal operator*(ExtendedReal x, ExtendedReal y) { return x.value_ * y; }

std::string ExtendedReal::to_string() const {
  if (is_pos_inf()) return "inf";
  if (is_neg_inf()) return "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value_);
  return std::string(buf, end);
}

ExtendedReal min_of(std::span<const ExtendedReal> xs) noexcept {
  ExtendedReal m = ExtendedReal::pos_inf();
  for (auto x : xs) m = min(m, x);
  return m;
}

ExtendedReal max_of(std::span<const ExtendedReal> xs) noexcept {
  ExtendedReal m = ExtendedReal::neg_inf();
  for (auto x : xs) m = max(m, x);
  return m;
}

ExtendedReal parse_extended_real(const std::string& text) {
  if (text == "inf" || text == "+inf") return ExtendedReal::pos_inf();
  if (text == "-inf") return ExtendedReal::neg_inf();
  double v = 0.0;
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  auto [end, ec] = std::from_chars(first, text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) {
    throw UsageError("not an extended real: '" + text + "'");
  }
  return v;
}

}  // namespace specpoint
