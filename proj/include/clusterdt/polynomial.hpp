#pragma once

// Univariate polynomials with exact coefficients, the characteristic polynomial
// of an integer matrix, and the root-location machinery used for certified
// spectral radii: Sturm sequences for real roots and the Schur-Cohn recursion
// for "all roots inside a disk".

#include "clusterdt/arith.hpp"
#include "clusterdt/matrix.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace clusterdt {

/// Coefficients in ascending degree; the zero polynomial has no coefficients.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Polynomial monomial(std::size_t degree, const T& coeff = T(1)) {
    std::vector<T> c(degree + 1, T(0));
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const T& leading() const { return c_.back(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }

  bool operator==(const Polynomial&) const = default;

  template <class V>
  V operator()(const V& x) const {
    V acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + V(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  Polynomial operator-() const {
    auto c = c_;
    for (auto& v : c) v = -v;
    return Polynomial(std::move(c));
  }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<T> c(std::max(c_.size(), o.c_.size()), T(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
    return Polynomial(std::move(c));
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<T> c(c_.size() + o.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(c));
  }

  template <class U>
  Polynomial<U> cast() const {
    std::vector<U> c;
    c.reserve(c_.size());
    for (const auto& v : c_) c.push_back(U(v));
    return Polynomial<U>(std::move(c));
  }

  /// Human-readable form, e.g. "x^4 - x^3 - 3x^2 - x + 1".
  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int d = degree(); d >= 0; --d) {
      const T& a = c_[static_cast<std::size_t>(d)];
      if (a == 0) continue;
      const bool negative = a < 0;
      const T mag = negative ? T(-a) : a;
      if (first)
        os << (negative ? "-" : "");
      else
        os << (negative ? " - " : " + ");
      first = false;
      if (d == 0 || mag != 1) os << mag;
      if (d >= 1) os << var;
      if (d >= 2) os << '^' << d;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

/// Quotient and remainder over a field.
inline std::pair<RatPolynomial, RatPolynomial> divide(const RatPolynomial& a, const RatPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RatPolynomial{}, a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  for (int d = a.degree(); d >= db; --d) {
    const Rational f = rem[static_cast<std::size_t>(d)] / b.leading();
    if (f == 0) continue;
    quo[static_cast<std::size_t>(d - db)] = f;
    for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(d - db + i)] -= f * b.coeffs()[static_cast<std::size_t>(i)];
  }
  return {RatPolynomial(std::move(quo)), RatPolynomial(std::move(rem))};
}

/// Positive rational multiple with coprime integer coefficients.
inline IntPolynomial primitive_part(const RatPolynomial& p) {
  if (p.is_zero()) return {};
  Integer lcm = 1;
  for (const auto& c : p.coeffs()) {
    const Integer d = boost::multiprecision::denominator(c);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  std::vector<Integer> ints;
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    ints.push_back(boost::multiprecision::numerator(c) * (lcm / boost::multiprecision::denominator(c)));
    g = boost::multiprecision::gcd(g, ints.back());
  }
  for (auto& v : ints) v /= g;
  return IntPolynomial(std::move(ints));
}

inline IntPolynomial primitive_part(const IntPolynomial& p) {
  if (p.is_zero()) return {};
  Integer g = 0;
  for (const auto& c : p.coeffs()) g = boost::multiprecision::gcd(g, c);
  auto c = p.coeffs();
  for (auto& v : c) v /= g;
  return IntPolynomial(std::move(c));
}

/// Monic gcd over the rationals.
inline RatPolynomial gcd(RatPolynomial a, RatPolynomial b) {
  while (!b.is_zero()) {
    auto r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  const Rational lc = a.leading();
  auto c = a.coeffs();
  for (auto& v : c) v /= lc;
  return RatPolynomial(std::move(c));
}

/// Exact division of integer polynomials; nullopt if b does not divide a over Z.
inline std::optional<IntPolynomial> exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
  auto [q, r] = divide(a.cast<Rational>(), b.cast<Rational>());
  if (!r.is_zero()) return std::nullopt;
  std::vector<Integer> out;
  for (const auto& c : q.coeffs()) {
    if (boost::multiprecision::denominator(c) != 1) return std::nullopt;
    out.push_back(boost::multiprecision::numerator(c));
  }
  return IntPolynomial(std::move(out));
}

/// det(x Id - A) by the Faddeev-LeVerrier recursion; every division is exact.
inline IntPolynomial char_poly(const IntMatrix& a) {
  if (!a.square()) throw std::invalid_argument("char_poly of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Integer> c(n + 1, Integer(0));
  c[n] = 1;
  IntMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = a * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    m = std::move(next);
    const Integer t = (a * m).trace();
    c[n - k] = -t / Integer(static_cast<long>(k));
  }
  return IntPolynomial(std::move(c));
}

template <class T>
IntPolynomial char_poly(const Matrix<T>& a) {
  return char_poly(a.template cast<Integer>());
}

/// Square-free part as a primitive integer polynomial with positive leading coefficient.
inline IntPolynomial squarefree_part(const IntPolynomial& p) {
  const auto pr = p.cast<Rational>();
  const auto g = gcd(pr, pr.derivative());
  auto q = primitive_part(divide(pr, g).first);
  return q.leading() < 0 ? -q : q;
}

// ---------------------------------------------------------------------------
// Real roots via Sturm sequences.

class SturmSequence {
 public:
  /// p must be square-free and nonzero.
  explicit SturmSequence(const IntPolynomial& p) {
    seq_.push_back(p);
    if (p.degree() <= 0) return;
    seq_.push_back(primitive_part(p.derivative()));
    while (seq_.back().degree() > 0) {
      auto r = divide(seq_[seq_.size() - 2].cast<Rational>(), seq_.back().cast<Rational>()).second;
      if (r.is_zero()) break;
      seq_.push_back(-primitive_part(r));
    }
  }

  /// Sign changes at x, skipping zeros.
  int variations(const Rational& x) const {
    int count = 0, prev = 0;
    for (const auto& s : seq_) {
      const int sg = sign_of(s(x));
      if (sg == 0) continue;
      if (prev != 0 && sg != prev) ++count;
      prev = sg;
    }
    return count;
  }

  /// Distinct real roots in the half-open interval (a, b].
  int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

  const IntPolynomial& polynomial() const { return seq_.front(); }

 private:
  std::vector<IntPolynomial> seq_;
};

/// 1 + max |a_i / a_n|, rounded up to an integer: every complex root has smaller modulus.
inline Integer cauchy_bound(const IntPolynomial& p) {
  if (p.degree() <= 0) return 1;
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    const Rational r = Rational(abs_value(p.coeff(static_cast<std::size_t>(i)))) / Rational(abs_value(p.leading()));
    if (r > m) m = r;
  }
  const Rational b = m + 1;
  Integer ceil = boost::multiprecision::numerator(b) / boost::multiprecision::denominator(b);
  if (Rational(ceil) < b) ++ceil;
  return ceil;
}

struct RootInterval {
  Rational lo;
  Rational hi;  // the root lies in [lo, hi]; lo == hi means the root is exact
  bool exact() const { return lo == hi; }
};

/// All real roots of a square-free polynomial, each enclosed to width <= width.
inline std::vector<RootInterval> isolate_real_roots(const IntPolynomial& p, const Rational& width) {
  std::vector<RootInterval> roots;
  if (p.degree() <= 0) return roots;
  const SturmSequence sturm(p);
  const Rational bound(cauchy_bound(p));

  // Intervals are half-open (a, b]; a root equal to a bisection midpoint is caught exactly.
  struct Work {
    Rational a, b;
    int n;
  };
  std::vector<Work> stack{{-bound, bound, sturm.count(-bound, bound)}};
  while (!stack.empty()) {
    Work w = stack.back();
    stack.pop_back();
    if (w.n == 0) continue;
    if (w.n == 1) {
      Rational a = w.a, b = w.b;
      while (b - a > width) {
        if (p(b) == 0) {
          a = b;
          break;
        }
        const Rational mid = (a + b) / 2;
        if (sturm.count(a, mid) == 1)
          b = mid;
        else
          a = mid;
      }
      if (p(b) == 0) a = b;
      roots.push_back({a, b});
      continue;
    }
    const Rational mid = (w.a + w.b) / 2;
    const int left = sturm.count(w.a, mid);
    stack.push_back({mid, w.b, w.n - left});
    stack.push_back({w.a, mid, left});
  }
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  return roots;
}

// ---------------------------------------------------------------------------
// Schur-Cohn: are all roots strictly inside the disk |z| < r?

inline bool all_roots_inside_disk(const IntPolynomial& p, const Rational& radius) {
  if (p.is_zero()) throw std::domain_error("zero polynomial has no roots to locate");
  if (radius <= 0) return false;
  // q(z) = b^d p((a/b) z) has the roots of p scaled by 1/r.
  const Integer a = boost::multiprecision::numerator(radius);
  const Integer b = boost::multiprecision::denominator(radius);
  const auto d = static_cast<std::size_t>(p.degree());
  std::vector<Integer> q(d + 1);
  Integer apow = 1;
  for (std::size_t k = 0; k <= d; ++k) {
    q[k] = p.coeff(k) * apow * boost::multiprecision::pow(b, static_cast<unsigned>(d - k));
    apow *= a;
  }
  IntPolynomial cur = primitive_part(IntPolynomial(std::move(q)));
  while (cur.degree() > 0) {
    const auto deg = static_cast<std::size_t>(cur.degree());
    const Integer a0 = cur.coeff(0);
    const Integer ad = cur.leading();
    if (abs_value(a0) >= abs_value(ad)) return false;
    // (ad q(z) - a0 q*(z)) / z, with q* the reversed polynomial.
    std::vector<Integer> next(deg);
    for (std::size_t k = 0; k < deg; ++k) next[k] = ad * cur.coeff(k + 1) - a0 * cur.coeff(deg - 1 - k);
    cur = primitive_part(IntPolynomial(std::move(next)));
  }
  return true;
}

// ---------------------------------------------------------------------------
// Cyclotomic factors.

inline std::size_t euler_phi(std::size_t n) {
  std::size_t result = n;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

inline IntPolynomial cyclotomic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclotomic polynomial index must be positive");
  // x^d - 1 divided by the cyclotomic polynomials of the proper divisors of d.
  std::map<std::size_t, IntPolynomial> memo;
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    IntPolynomial p = IntPolynomial::monomial(d) - IntPolynomial{Integer(1)};
    for (const auto& [e, phi] : memo)
      if (d % e == 0) p = *exact_quotient(p, phi);
    memo.emplace(d, std::move(p));
  }
  return memo.at(n);
}

/// True iff p is +- a product of cyclotomic polynomials, i.e. every root is a root of unity.
inline bool is_cyclotomic_product(IntPolynomial p) {
  if (p.degree() < 0) return false;
  const auto deg = static_cast<std::size_t>(p.degree());
  // phi(n) >= sqrt(n / 2), so no factor of degree <= deg has n > 2 deg^2.
  for (std::size_t n = 1; n <= 2 * deg * deg + 2 && p.degree() > 0; ++n) {
    if (euler_phi(n) > static_cast<std::size_t>(p.degree())) continue;
    const auto phi = cyclotomic(n);
    while (p.degree() >= phi.degree()) {
      auto q = exact_quotient(p, phi);
      if (!q) break;
      p = std::move(*q);
    }
  }
  return p.degree() == 0 && abs_value(p.coeff(0)) == 1;
}

}  // namespace clusterdt
