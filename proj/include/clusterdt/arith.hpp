#pragma once

// Exact scalar types and the small set of helpers shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace clusterdt {

// Expression templates off: values are always materialized, so `auto` and
// std::min/max behave as for builtin types.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The quiver has a directed cycle but the operation needs a topological order.
class CyclicQuiver : public Error {
 public:
  CyclicQuiver() : Error("quiver has a directed cycle") {}
  explicit CyclicQuiver(const std::string& what) : Error(what) {}
};

/// Any other violated precondition that is a property of the input quiver.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Overflow-checked arithmetic. Exchange matrices are kept in 64-bit integers;
// the overloads for Integer let templated code run unchanged on big integers.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in multiplication");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("int64 overflow in negation");
  return -a;
}

inline Integer checked_add(const Integer& a, const Integer& b) { return a + b; }
inline Integer checked_sub(const Integer& a, const Integer& b) { return a - b; }
inline Integer checked_mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer checked_neg(const Integer& a) { return -a; }

/// [a]_+ = max(a, 0)
template <class T>
T positive_part(const T& a) {
  return a > 0 ? a : T(0);
}

/// [a]_- = min(a, 0)
template <class T>
T negative_part(const T& a) {
  return a < 0 ? a : T(0);
}

template <class T>
T abs_value(const T& a) {
  return a < 0 ? T(-a) : a;
}

template <class T>
int sign_of(const T& a) {
  return a > 0 ? 1 : (a < 0 ? -1 : 0);
}

inline std::string to_string(const Integer& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

inline double to_double(const Rational& v) { return v.convert_to<double>(); }

/// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of a negative number");
  return boost::multiprecision::sqrt(n);
}

}  // namespace clusterdt
