#pragma once

// Decimal rendering of exact and high-precision values for reports.
// Rounded style prints exactly `digits` decimals. Truncated style (--paper-style) cuts and
// appends "..." unless the value is exactly represented, which prints minimally.

#include "clusterdt/arith.hpp"
#include "clusterdt/stability.hpp"
#include "clusterdt/tropical.hpp"

#include <string>
#include <vector>

namespace clusterdt::cli {

struct FormatStyle {
  int digits = 13;
  bool paper = false;
};

namespace detail {

inline Integer pow10(int d) { return boost::multiprecision::pow(Integer(10), static_cast<unsigned>(d)); }

/// Decimal string of sign * k / 10^d; `minimal` strips trailing zeros.
inline std::string render(bool negative, const Integer& k, int d, bool minimal) {
  std::string digits = k.str();
  if (static_cast<int>(digits.size()) <= d) digits.insert(0, static_cast<std::size_t>(d + 1) - digits.size(), '0');
  std::string whole = digits.substr(0, digits.size() - static_cast<std::size_t>(d));
  std::string frac = digits.substr(digits.size() - static_cast<std::size_t>(d));
  if (minimal)
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = (negative && (k != 0 || !minimal) ? "-" : "") + whole;
  if (!frac.empty()) out += "." + frac;
  return out;
}

}  // namespace detail

/// |v| * 10^d = sqrt(q) with q rational and q >= 0; `negative` is the sign of v.
inline std::string format_sqrt(bool negative, const Rational& q, const FormatStyle& st) {
  const int d = st.digits;
  const Integer fl = boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
  const Integer k = isqrt(fl);
  const bool exact = Rational(k * k) == q;
  if (st.paper) {
    if (exact) return detail::render(negative, k, d, true);
    return detail::render(negative, k, d, false) + "...";
  }
  // Round half away from zero: k + 1 when sqrt(q) >= k + 1/2, i.e. 4q >= (2k+1)^2.
  const Integer up = (Rational(4) * q >= Rational((2 * k + 1) * (2 * k + 1))) ? k + 1 : k;
  return detail::render(negative && up != 0, up, d, false);
}

inline std::string format_rational(const Rational& r, const FormatStyle& st) {
  const Rational a = abs_value(r);
  return format_sqrt(r < 0, a * a * Rational(detail::pow10(2 * st.digits)), st);
}

/// Components of u(x) = x / |x|, each computed exactly from the integer ray of x.
inline std::vector<std::string> format_unit(const TropicalPoint& x, const FormatStyle& st) {
  const auto ray = primitive_ray(x);
  Integer s = 0;
  for (const auto& v : ray) s += v * v;
  std::vector<std::string> out;
  for (const auto& v : ray) {
    if (s == 0) {
      out.push_back(format_rational(Rational(0), st));
      continue;
    }
    out.push_back(format_sqrt(v < 0, Rational(v * v * detail::pow10(2 * st.digits), s), st));
  }
  return out;
}

inline std::string format_high(const HighPrecision& v, const FormatStyle& st) {
  const HighPrecision scaled = abs(v) * pow(HighPrecision(10), st.digits);
  const HighPrecision fl = floor(scaled);
  Integer k = fl.convert_to<Integer>();
  const bool exact = fl == scaled;
  if (st.paper) return detail::render(v < 0, k, st.digits, exact) + (exact ? "" : "...");
  if (scaled - fl >= HighPrecision(0.5)) ++k;
  return detail::render(v < 0 && k != 0, k, st.digits, false);
}

inline std::vector<std::string> format_high(const std::vector<HighPrecision>& v, const FormatStyle& st) {
  std::vector<std::string> out;
  for (const auto& c : v) out.push_back(format_high(c, st));
  return out;
}

inline std::string format_double(double v, const FormatStyle& st) { return format_high(HighPrecision(v), st); }

/// "(a, b, c)"
inline std::string tuple(const std::vector<std::string>& parts) {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
  return s + ")";
}

}  // namespace clusterdt::cli
