#pragma once

// Path-count matrix M, Coxeter matrix Phi = -M^{-1} M^T, certified spectral
// radii of integer matrices, palindromicity and the dimension-vector orbits
// M^T Phi^n and M Phi^{-n}.

#include "clusterdt/arith.hpp"
#include "clusterdt/matrix.hpp"
#include "clusterdt/polynomial.hpp"
#include "clusterdt/quiver.hpp"

#include <optional>
#include <vector>

namespace clusterdt {

/// m(i, j) = number of directed paths i -> j counted with arrow multiplicity; m(i, i) = 1.
struct PathCountMatrix {
  IntMatrix m;
};

struct CoxeterMatrix {
  IntMatrix phi;
  IntMatrix inverse;
};

inline PathCountMatrix path_count_matrix(const ExchangeMatrix& b) {
  // Throws CyclicQuiver: path counts diverge on a directed cycle.
  const auto order = admissible_labeling(b).order;
  const std::size_t n = b.size();
  IntMatrix m(n, n);
  for (std::size_t start = 0; start < n; ++start) {
    m(start, start) = 1;
    // Predecessors come earlier in the topological order, so one sweep suffices.
    for (Vertex v : order)
      for (std::size_t u = 0; u < n; ++u)
        if (b(u, v) > 0 && m(start, u) != 0) m(start, v) += m(start, u) * b(u, v);
  }
  return {std::move(m)};
}

/// Phi = -(Id - A) M^T and Phi^{-1} = -(Id - A)^T M, using M^{-1} = Id - A.
inline CoxeterMatrix coxeter_matrix(const ExchangeMatrix& b) {
  const auto m = path_count_matrix(b).m;
  const auto id_minus_a = IntMatrix::identity(b.size()) - b.arrow_matrix();
  return {-(id_minus_a * m.transpose()), -(id_minus_a.transpose() * m)};
}

// ---------------------------------------------------------------------------

/// Certified spectral radius: rho lies in [lo, hi] and hi - lo <= tolerance.
struct SpectralResult {
  IntPolynomial char_poly;
  double rho = 0.0;
  Rational lo;
  Rational hi;
  double tolerance = 0.0;
  /// Every root of the characteristic polynomial has modulus 1 (root-of-unity spectrum).
  bool unit_spectrum = false;

  Rational midpoint() const { return (lo + hi) / 2; }
};

inline constexpr double kDefaultTolerance = 1e-12;

/// Dyadic rational no larger than tol (tol > 0 is a double, so this is exact).
inline Rational rational_from_double(double tol) {
  int exp = 0;
  const double mant = std::frexp(tol, &exp);  // tol = mant * 2^exp, mant in [0.5, 1)
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r(scaled);
  const int shift = exp - 53;
  if (shift >= 0)
    r *= Rational(Integer(1) << shift);
  else
    r /= Rational(Integer(1) << (-shift));
  return r;
}

/// Spectral radius enclosure from a characteristic polynomial.
///  1. real roots of the square-free part are isolated with Sturm sequences;
///  2. the largest real modulus is confirmed dominant with a Schur-Cohn disk test;
///  3. otherwise a complex pair dominates and the modulus is bisected with the same test.
inline SpectralResult spectral_radius_of_poly(const IntPolynomial& p, double tol = kDefaultTolerance) {
  if (!(tol > 0)) throw std::invalid_argument("spectral tolerance must be positive");
  SpectralResult out;
  out.char_poly = p;
  out.tolerance = tol;
  if (p.degree() < 0) throw std::invalid_argument("zero characteristic polynomial");
  if (p.degree() == 0 || p == IntPolynomial::monomial(static_cast<std::size_t>(p.degree()), p.leading())) {
    out.lo = out.hi = 0;
    return out;
  }
  out.unit_spectrum = is_cyclotomic_product(p);
  if (out.unit_spectrum) {
    out.lo = out.hi = 1;
    out.rho = 1.0;
    return out;
  }
  // Enclosures are refined well beyond tol so the reported double is correctly rounded.
  const Rational width = std::min(rational_from_double(tol) / 2, Rational(1, Integer(1) << 64));
  const IntPolynomial q = squarefree_part(p);
  const auto roots = isolate_real_roots(q, width);

  Rational lo = 0, hi = 0;
  for (const auto& r : roots) {
    // |root| lies in [lower, upper].
    Rational lower, upper;
    if (r.lo >= 0) {
      lower = r.lo;
      upper = r.hi;
    } else if (r.hi <= 0) {
      lower = -r.hi;
      upper = -r.lo;
    } else {
      lower = 0;
      upper = std::max(-r.lo, r.hi);
    }
    lo = std::max(lo, lower);
    hi = std::max(hi, upper);
  }

  const bool all_real = static_cast<int>(roots.size()) == q.degree();
  if (!all_real) {
    const Rational probe = hi + width;
    if (all_roots_inside_disk(q, probe)) {
      hi = probe;
    } else {
      // Some non-real root has modulus >= probe.
      Rational a = probe, c = Rational(cauchy_bound(q));
      while (c - a > width) {
        const Rational mid = (a + c) / 2;
        if (all_roots_inside_disk(q, mid))
          c = mid;
        else
          a = mid;
      }
      lo = a;
      hi = c;
    }
  }
  out.lo = lo;
  out.hi = hi;
  out.rho = to_double(out.midpoint());
  return out;
}

inline SpectralResult spectral_radius(const IntMatrix& m, double tol = kDefaultTolerance) {
  if (!(tol > 0)) throw std::invalid_argument("spectral tolerance must be positive");
  return spectral_radius_of_poly(char_poly(m), tol);
}

/// Char polys of m and (m^{-1})^T agree up to overall sign (both are monic here).
inline bool palindromicity_check(const IntMatrix& m) {
  const IntMatrix inv = unimodular_inverse(m);
  const auto p = char_poly(m);
  const auto q = char_poly(inv.transpose());
  return p == q || p == -q;
}

// ---------------------------------------------------------------------------

struct DimensionVectorOrbit {
  std::vector<IntMatrix> injective;   // M^T Phi^n, n = 0..n_max
  std::vector<IntMatrix> projective;  // M Phi^{-n}
  std::vector<bool> injective_nonnegative;
  std::vector<bool> projective_nonnegative;
};

inline DimensionVectorOrbit dim_vector_orbit(const ExchangeMatrix& b, std::size_t n_max) {
  const auto m = path_count_matrix(b).m;
  const auto cox = coxeter_matrix(b);
  DimensionVectorOrbit out;
  IntMatrix inj = m.transpose();
  IntMatrix proj = m;
  for (std::size_t n = 0; n <= n_max; ++n) {
    out.injective_nonnegative.push_back(inj.all_nonnegative());
    out.projective_nonnegative.push_back(proj.all_nonnegative());
    out.injective.push_back(inj);
    out.projective.push_back(proj);
    if (n == n_max) break;
    inj = inj * cox.phi;
    proj = proj * cox.inverse;
  }
  return out;
}

/// Everything the reports print about the Coxeter transformation of an acyclic quiver.
struct CoxeterData {
  PathCountMatrix m;
  CoxeterMatrix phi;
  SpectralResult spectrum;
  bool palindromic = false;
};

inline CoxeterData coxeter_data(const ExchangeMatrix& b, double tol = kDefaultTolerance) {
  CoxeterData d;
  d.m = path_count_matrix(b);
  d.phi = coxeter_matrix(b);
  d.spectrum = spectral_radius(d.phi.phi, tol);
  d.palindromic = palindromicity_check(d.phi.phi);
  return d;
}

}  // namespace clusterdt
