#pragma once

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>

#include "dsmatch/evidence.hpp"
#include "dsmatch/rational.hpp"

namespace dsmatch {

// Fractions are printed over a common base (normally |L|, so 5/15 rather than
// 1/3) whenever the base is a multiple of the reduced denominator. 0 and 1 are
// always printed as integers.
struct FractionStyle {
  std::int64_t base = 0;
  bool reduced = false;
};

inline std::string format_fraction(const Rational& r, const FractionStyle& style = {}) {
  if (r.is_integer() || style.reduced || style.base <= 0 || style.base % r.den() != 0) return r.str();
  const std::int64_t scale = style.base / r.den();
  return std::to_string(r.num() * scale) + "/" + std::to_string(style.base);
}

inline std::string format_decimal(const Rational& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << r.to_double();
  return os.str();
}

// "4/15 (0.266667)"
inline std::string format_value(const Rational& r, const FractionStyle& style = {}) {
  return format_fraction(r, style) + " (" + format_decimal(r) + ")";
}

// "[8/15, 1] (0.533333, 1.000000)"
inline std::string format_interval(const IntervalProbability& p, const FractionStyle& style = {}) {
  return "[" + format_fraction(p.belief(), style) + ", " + format_fraction(p.plausibility(), style) + "] (" +
         format_decimal(p.belief()) + ", " + format_decimal(p.plausibility()) + ")";
}

}  // namespace dsmatch
