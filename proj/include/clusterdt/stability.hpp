#pragma once

// Empirical basic sign stability of a mutation loop on the canonical domain
// int C+ u int C-, stretch factors, and normalized tau-orbits with their
// North-South limits for wild acyclic quivers.

#include "clusterdt/arith.hpp"
#include "clusterdt/coxeter.hpp"
#include "clusterdt/quiver.hpp"
#include "clusterdt/tropical.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace clusterdt {

struct StabilityOptions {
  std::size_t samples_per_cone = 5;
  std::size_t max_iters = 100;
  std::uint64_t seed = 1;
  /// Rounds of constant sign required at the end of every orbit.
  std::size_t consecutive = 5;
  unsigned threads = 1;
  double tolerance = kDefaultTolerance;
};

enum class StabilityStatus { Stable, NotStable, Inconclusive };

inline std::string to_string(StabilityStatus s) {
  switch (s) {
    case StabilityStatus::Stable: return "stable";
    case StabilityStatus::NotStable: return "not_stable";
    case StabilityStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// The orbit returned to the ray it visited at round `first`.
struct Recurrence {
  std::size_t first = 0;
  std::size_t period = 0;
  std::vector<Integer> ray;  // primitive integer representative
};

struct SampleTranscript {
  TropicalPoint start;
  std::vector<SignVector> signs;  // signs[n] = sign of the loop at round n
  std::size_t iterations = 0;
  std::optional<Recurrence> recurrence;
  /// First round from which the recorded sign never changes.
  std::size_t n0 = 0;
  TropicalPoint last;

  /// Sign of the final rounds if it was constant for at least k rounds.
  std::optional<SignVector> settled(std::size_t k) const {
    if (signs.size() < k || k == 0) return std::nullopt;
    if (signs.size() - n0 < k) return std::nullopt;
    return signs.back();
  }

  /// Sign cycle of an exact recurrence.
  std::vector<SignVector> cycle() const {
    if (!recurrence) return {};
    return {signs.begin() + static_cast<std::ptrdiff_t>(recurrence->first),
            signs.begin() + static_cast<std::ptrdiff_t>(recurrence->first + recurrence->period)};
  }
};

struct StabilityWitness {
  std::size_t sample = 0;
  std::optional<std::size_t> other_sample;
  std::string reason;
};

struct StabilityVerdict {
  StabilityStatus status = StabilityStatus::Inconclusive;
  std::optional<SignVector> stable_sign;
  std::optional<PresentationMatrix> stable_matrix;
  std::optional<SpectralResult> stretch_factor;
  std::vector<SampleTranscript> evidence;
  std::optional<StabilityWitness> witness;
};

/// Primitive integer vector on the ray through x (x nonzero).
inline std::vector<Integer> primitive_ray(const TropicalPoint& x) {
  Integer lcm = 1;
  for (const auto& v : x) {
    const Integer d = boost::multiprecision::denominator(v);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& v : x) {
    out.push_back(boost::multiprecision::numerator(v) * (lcm / boost::multiprecision::denominator(v)));
    g = boost::multiprecision::gcd(g, out.back());
  }
  if (g > 1)
    for (auto& v : out) v /= g;
  return out;
}

/// Iterate the loop on one start point. Stops early only on an exact recurrence of rays,
/// which for a positively homogeneous map makes the whole sign sequence periodic.
inline SampleTranscript trace_sample(const MutationPath& gamma, const TropicalPoint& start, std::size_t max_iters) {
  SampleTranscript t;
  t.start = start;
  std::map<std::vector<Integer>, std::size_t> seen;
  TropicalPoint x = start;
  for (std::size_t n = 0; n < max_iters; ++n) {
    auto ray = primitive_ray(x);
    if (auto it = seen.find(ray); it != seen.end()) {
      t.recurrence = Recurrence{it->second, n - it->second, std::move(ray)};
      break;
    }
    seen.emplace(std::move(ray), n);
    const PathRun run = run_path(x, gamma);
    if (!t.signs.empty() && !(run.sign == t.signs.back())) t.n0 = n;
    t.signs.push_back(run.sign);
    x = run.image;
    ++t.iterations;
  }
  t.last = x;
  return t;
}

inline std::vector<TropicalPoint> canonical_samples(std::size_t n, const StabilityOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> coord(1, 100);
  std::vector<TropicalPoint> out;
  for (std::size_t s = 0; s < opts.samples_per_cone; ++s) {
    TropicalPoint x(n);
    for (auto& v : x) v = coord(rng);
    out.push_back(x);
  }
  for (std::size_t s = 0; s < opts.samples_per_cone; ++s) out.push_back(negate(out[s]));
  return out;
}

namespace detail {

inline std::vector<SampleTranscript> trace_all(const MutationPath& gamma, const std::vector<TropicalPoint>& starts,
                                               const StabilityOptions& opts) {
  std::vector<SampleTranscript> out(starts.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(starts.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) out[i] = trace_sample(gamma, starts[i], opts.max_iters);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < starts.size(); i += workers) out[i] = trace_sample(gamma, starts[i], opts.max_iters);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline bool constant_strict(const std::vector<SignVector>& cycle) {
  if (cycle.empty() || !cycle.front().strict()) return false;
  return std::all_of(cycle.begin(), cycle.end(), [&](const SignVector& s) { return s == cycle.front(); });
}

}  // namespace detail

/// Detector on explicit start points; every coordinate must be nonzero.
inline StabilityVerdict detect_basic_sign_stability(const MutationPath& gamma, const std::vector<TropicalPoint>& starts,
                                                    const StabilityOptions& opts = {}) {
  require_closed(gamma);
  if (starts.empty()) throw std::invalid_argument("no sample points");
  if (opts.consecutive == 0) throw std::invalid_argument("consecutive rounds must be positive");
  for (const auto& x : starts) {
    require_dimension(x, gamma.base.size());
    if (!strictly_nonzero(x)) throw std::invalid_argument("sample " + to_string(x) + " has a zero coordinate");
  }

  StabilityVerdict v;
  v.evidence = detail::trace_all(gamma, starts, opts);

  // Exact disproofs first.
  std::optional<std::pair<std::size_t, SignVector>> periodic_constant;
  for (std::size_t i = 0; i < v.evidence.size(); ++i) {
    const auto& t = v.evidence[i];
    if (!t.recurrence) continue;
    const auto cyc = t.cycle();
    if (!detail::constant_strict(cyc)) {
      v.status = StabilityStatus::NotStable;
      v.witness = StabilityWitness{i, std::nullopt,
                                   "ray recurs with period " + std::to_string(t.recurrence->period) +
                                       " and a sign cycle that is not a constant strict sign"};
      return v;
    }
    if (periodic_constant && !(periodic_constant->second == cyc.front())) {
      v.status = StabilityStatus::NotStable;
      v.witness = StabilityWitness{periodic_constant->first, i,
                                   "two periodic orbits settle on different signs " + periodic_constant->second.str() +
                                       " and " + cyc.front().str()};
      return v;
    }
    if (!periodic_constant) periodic_constant.emplace(i, cyc.front());
  }

  // Stability: every orbit ends on one common strict sign, and the presentation
  // matrix of that sign reproduces the last rounds exactly.
  std::optional<SignVector> common;
  for (const auto& t : v.evidence) {
    std::optional<SignVector> s = t.recurrence ? std::optional<SignVector>(t.cycle().front()) : t.settled(opts.consecutive);
    if (!s || !s->strict() || (common && !(*common == *s))) return v;
    common = s;
  }
  const auto pm = presentation_matrix(gamma, *common);
  for (const auto& t : v.evidence) {
    if (t.recurrence) continue;
    // Replay the last `consecutive` rounds.
    TropicalPoint x = t.start;
    const std::size_t from = t.iterations - opts.consecutive;
    for (std::size_t n = 0; n < t.iterations; ++n) {
      const TropicalPoint y = apply_path(x, gamma);
      if (n >= from && pm.e.apply(x) != y) return v;
      x = y;
    }
  }
  v.status = StabilityStatus::Stable;
  v.stable_sign = common;
  v.stable_matrix = pm;
  auto sr = spectral_radius(pm.e, opts.tolerance);
  if (pm.fully_mutating && sr.hi < 1)
    throw std::logic_error("stable fully-mutating loop with stretch factor below 1");
  v.stretch_factor = std::move(sr);
  return v;
}

inline StabilityVerdict detect_basic_sign_stability(const MutationPath& gamma, const StabilityOptions& opts = {}) {
  return detect_basic_sign_stability(gamma, canonical_samples(gamma.base.size(), opts), opts);
}

/// Spectral radius of a stable presentation matrix.
inline SpectralResult stretch_factor(const PresentationMatrix& e, double tol = kDefaultTolerance) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  if (!e.fully_mutating)
    std::clog << "warning: stretch factor of a path that is not fully mutating depends on the base seed\n";
  auto sr = spectral_radius(e.e, tol);
  if (e.fully_mutating && e.sign.strict() && sr.hi < 1)
    throw std::logic_error("stretch factor below 1 for a fully-mutating loop");
  return sr;
}

// ---------------------------------------------------------------------------
// North-South dynamics.

class NotWild : public PreconditionError {
 public:
  NotWild() : PreconditionError("quiver is not wild: the Coxeter matrix has spectral radius 1") {}
};

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

struct NorthSouthLimit {
  SpectralResult rho;
  std::vector<HighPrecision> p_plus;   // unit rho-eigenvector of Phi
  std::vector<HighPrecision> p_minus;  // unit rho-eigenvector of Phi^{-1}
};

namespace detail {

inline std::vector<HighPrecision> solve(std::vector<std::vector<HighPrecision>> a, std::vector<HighPrecision> y) {
  const std::size_t n = y.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(a[r][c]) > abs(a[p][c])) p = r;
    std::swap(a[p], a[c]);
    std::swap(y[p], y[c]);
    if (a[c][c] == 0) a[c][c] = HighPrecision("1e-45");
    for (std::size_t r = c + 1; r < n; ++r) {
      const HighPrecision f = a[r][c] / a[c][c];
      if (f == 0) continue;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      y[r] -= f * y[c];
    }
  }
  std::vector<HighPrecision> x(n);
  for (std::size_t i = n; i-- > 0;) {
    HighPrecision acc = y[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
    x[i] = acc / a[i][i];
  }
  return x;
}

inline void normalize(std::vector<HighPrecision>& v) {
  HighPrecision s = 0;
  for (const auto& c : v) s += c * c;
  s = sqrt(s);
  for (auto& c : v) c /= s;
}

/// Inverse iteration for the eigenvalue mu of m.
inline std::vector<HighPrecision> eigenvector(const IntMatrix& m, const HighPrecision& mu) {
  const std::size_t n = m.rows();
  std::vector<std::vector<HighPrecision>> a(n, std::vector<HighPrecision>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = HighPrecision(m(i, j)) - (i == j ? mu : HighPrecision(0));
  std::vector<HighPrecision> v(n, HighPrecision(1));
  for (std::size_t i = 0; i < n; ++i) v[i] += HighPrecision(i) / 7;  // avoid starting orthogonal to the target
  normalize(v);
  for (int it = 0; it < 8; ++it) {
    v = solve(a, v);
    normalize(v);
  }
  return v;
}

inline HighPrecision to_high(const Rational& r) {
  return HighPrecision(boost::multiprecision::numerator(r)) / HighPrecision(boost::multiprecision::denominator(r));
}

/// Sum of entries of m * v.
inline HighPrecision weighted_sum(const IntMatrix& m, const std::vector<HighPrecision>& v) {
  HighPrecision s = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += HighPrecision(m(i, j)) * v[j];
  return s;
}

}  // namespace detail

/// Attracting (p+) and repelling (p-) directions of the DT loop of a wild acyclic quiver.
/// p+ is the ray with M^T p+ <= 0, the side reached by forward orbits of C-;
/// p- is the ray with M p- >= 0, the side reached by backward orbits of C+.
inline NorthSouthLimit ns_limit(const ExchangeMatrix& b, double tol = kDefaultTolerance) {
  const auto m = path_count_matrix(b).m;
  const auto cox = coxeter_matrix(b);
  NorthSouthLimit out;
  out.rho = spectral_radius(cox.phi, tol);
  if (out.rho.unit_spectrum || out.rho.hi <= Rational(1) + rational_from_double(tol)) throw NotWild();
  // Pin rho far below the working precision before inverse iteration.
  const SpectralResult fine = spectral_radius(cox.phi, 1e-30);
  const HighPrecision mu = detail::to_high(fine.midpoint());
  out.p_plus = detail::eigenvector(cox.phi, mu);
  out.p_minus = detail::eigenvector(cox.inverse, mu);
  if (detail::weighted_sum(m.transpose(), out.p_plus) > 0)
    for (auto& c : out.p_plus) c = -c;
  if (detail::weighted_sum(m, out.p_minus) < 0)
    for (auto& c : out.p_minus) c = -c;
  return out;
}

enum class Direction { Forward, Backward };

inline std::string to_string(Direction d) { return d == Direction::Forward ? "forward" : "backward"; }

struct OrbitRow {
  std::size_t n = 0;
  TropicalPoint exact;
  std::vector<double> unit;
};

struct OrbitTrace {
  Direction direction = Direction::Forward;
  std::vector<OrbitRow> rows;
  std::optional<std::vector<HighPrecision>> limit_direction;
};

/// u(x) = x / |x| in double precision; the exact row is scaled first so it cannot overflow.
inline std::vector<double> unit_vector(const TropicalPoint& x) {
  Rational big = 0;
  for (const auto& v : x) big = std::max(big, abs_value(v));
  std::vector<double> u(x.size(), 0.0);
  if (big == 0) return u;
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    u[i] = to_double(x[i] / big);
    s += u[i] * u[i];
  }
  s = std::sqrt(s);
  for (auto& c : u) c /= s;
  return u;
}

inline double distance(const std::vector<double>& a, const std::vector<HighPrecision>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i].convert_to<double>();
    s += d * d;
  }
  return std::sqrt(s);
}

inline OrbitTrace orbit_trace(const ExchangeMatrix& b, const TropicalPoint& x, std::size_t n_max,
                              Direction direction = Direction::Forward, double tol = kDefaultTolerance) {
  require_dimension(x, b.size());
  if (!is_acyclic(b)) throw CyclicQuiver("orbit_trace requires an acyclic quiver");
  OrbitTrace t;
  t.direction = direction;
  TropicalPoint cur = x;
  for (std::size_t n = 0; n <= n_max; ++n) {
    t.rows.push_back({n, cur, unit_vector(cur)});
    if (n == n_max) break;
    cur = direction == Direction::Forward ? apply_dt(b, cur) : apply_dt_inverse(b, cur);
  }
  try {
    const auto lim = ns_limit(b, tol);
    t.limit_direction = direction == Direction::Forward ? lim.p_plus : lim.p_minus;
  } catch (const NotWild&) {
  }
  return t;
}

}  // namespace clusterdt
