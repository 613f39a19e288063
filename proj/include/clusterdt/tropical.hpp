#pragma once

// Tropical cluster X-points in the base chart, horizontal mutation paths,
// their signs and presentation matrices, and the closed forms for the DT
// loop and its inverse on acyclic quivers.

#include "clusterdt/arith.hpp"
#include "clusterdt/matrix.hpp"
#include "clusterdt/quiver.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace clusterdt {

using TropicalPoint = std::vector<Rational>;

enum class Sign : int { Minus = -1, Zero = 0, Plus = 1 };

inline Sign sign_value(const Rational& v) { return static_cast<Sign>(sign_of(v)); }

inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : (s == Sign::Minus ? '-' : '0'); }

struct SignVector {
  std::vector<Sign> signs;

  static SignVector constant(std::size_t h, Sign s) { return {std::vector<Sign>(h, s)}; }

  std::size_t size() const { return signs.size(); }
  bool strict() const {
    return std::none_of(signs.begin(), signs.end(), [](Sign s) { return s == Sign::Zero; });
  }
  bool all(Sign s) const {
    return std::all_of(signs.begin(), signs.end(), [s](Sign t) { return t == s; });
  }
  bool operator==(const SignVector&) const = default;
  bool operator<(const SignVector& o) const { return signs < o.signs; }

  /// "(+,-,-)"
  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (i) s += ',';
      s += sign_char(signs[i]);
    }
    return s + ")";
  }
};

inline SignVector parse_sign_vector(const std::string& text) {
  SignVector v;
  for (char ch : text) {
    if (ch == '+') v.signs.push_back(Sign::Plus);
    else if (ch == '-') v.signs.push_back(Sign::Minus);
    else if (ch == '0') v.signs.push_back(Sign::Zero);
    else if (ch == '(' || ch == ')' || ch == ',' || ch == ' ') continue;
    else throw std::invalid_argument(std::string("bad sign character '") + ch + "'");
  }
  return v;
}

/// Horizontal path: mutate at steps[0], then steps[1], ... starting from `base`.
struct MutationPath {
  ExchangeMatrix base;
  std::vector<Vertex> steps;

  MutationPath() = default;
  MutationPath(ExchangeMatrix b, std::vector<Vertex> s) : base(std::move(b)), steps(std::move(s)) {
    for (Vertex k : steps)
      if (k >= base.size()) throw std::out_of_range("path step " + std::to_string(k) + " out of range");
  }

  std::size_t length() const { return steps.size(); }

  bool fully_mutating() const {
    std::vector<bool> hit(base.size(), false);
    for (Vertex k : steps) hit[k] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
  }

  /// Exchange matrices B^[0], ..., B^[h].
  std::vector<ExchangeMatrix> matrices() const {
    std::vector<ExchangeMatrix> out{base};
    for (Vertex k : steps) out.push_back(mutate_quiver(out.back(), k));
    return out;
  }

  ExchangeMatrix terminal() const { return matrices().back(); }
  bool closes() const { return terminal() == base; }

  /// The same loop traversed backwards; valid as a path only when `closes()`.
  MutationPath reversed() const {
    return {base, std::vector<Vertex>(steps.rbegin(), steps.rend())};
  }
};

inline void require_closed(const MutationPath& gamma) {
  if (!gamma.closes()) throw PreconditionError("mutation path does not return to its initial exchange matrix");
}

inline void require_dimension(const TropicalPoint& x, std::size_t n) {
  if (x.size() != n)
    throw std::invalid_argument("tropical point has " + std::to_string(x.size()) + " coordinates, expected " +
                                std::to_string(n));
}

/// x'_k = -x_k, x'_i = x_i + [sgn(x_k) b_ik]_+ x_k
inline TropicalPoint mutate_point(const TropicalPoint& x, const ExchangeMatrix& b, Vertex k) {
  require_dimension(x, b.size());
  if (k >= b.size()) throw std::out_of_range("vertex " + std::to_string(k) + " out of range");
  TropicalPoint y = x;
  const int s = sign_of(x[k]);
  y[k] = -x[k];
  if (s == 0) return y;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i == k) continue;
    const std::int64_t coeff = positive_part(s * b(i, k));
    if (coeff) y[i] += Rational(coeff) * x[k];
  }
  return y;
}

inline std::pair<TropicalPoint, ExchangeMatrix> tropical_mutate(const TropicalPoint& x, const ExchangeMatrix& b,
                                                               Vertex k) {
  return {mutate_point(x, b, k), mutate_quiver(b, k)};
}

/// Sequential application of a path; mutated[t] = x_{k_t}^{[t]}.
struct PathRun {
  TropicalPoint image;
  SignVector sign;
  std::vector<Rational> mutated;
  std::vector<TropicalPoint> points;  // x^[0..h]
};

inline PathRun run_path(const TropicalPoint& x, const MutationPath& gamma) {
  require_dimension(x, gamma.base.size());
  PathRun run;
  run.points.push_back(x);
  ExchangeMatrix b = gamma.base;
  TropicalPoint cur = x;
  for (Vertex k : gamma.steps) {
    run.mutated.push_back(cur[k]);
    run.sign.signs.push_back(sign_value(cur[k]));
    cur = mutate_point(cur, b, k);
    b = mutate_quiver(b, k);
    run.points.push_back(cur);
  }
  run.image = std::move(cur);
  return run;
}

inline SignVector path_sign(const TropicalPoint& x, const MutationPath& gamma) { return run_path(x, gamma).sign; }

inline TropicalPoint apply_path(const TropicalPoint& x, const MutationPath& gamma) {
  return run_path(x, gamma).image;
}

struct PresentationMatrix {
  IntMatrix e;
  SignVector sign;
  bool fully_mutating = false;
};

/// Linear map of the path on the closure of its sign domain.
inline PresentationMatrix presentation_matrix(const MutationPath& gamma, const SignVector& eps) {
  if (eps.size() != gamma.length())
    throw std::invalid_argument("sign has length " + std::to_string(eps.size()) + " but the path has " +
                                std::to_string(gamma.length()) + " steps");
  if (!eps.strict()) throw std::invalid_argument("presentation matrices need a strict sign " + eps.str());
  const std::size_t n = gamma.base.size();
  IntMatrix e = IntMatrix::identity(n);
  ExchangeMatrix b = gamma.base;
  for (std::size_t t = 0; t < gamma.length(); ++t) {
    const Vertex k = gamma.steps[t];
    const int s = static_cast<int>(eps.signs[t]);
    IntMatrix step = IntMatrix::identity(n);
    step(k, k) = -1;
    for (std::size_t i = 0; i < n; ++i)
      if (i != k) step(i, k) = positive_part(s * b(i, k));
    e = step * e;
    b = mutate_quiver(b, k);
  }
  return {std::move(e), eps, gamma.fully_mutating()};
}

// ---------------------------------------------------------------------------
// The DT loop of an acyclic quiver.

/// gamma_pi: mutate at the vertices in admissible order, in the original labels.
inline MutationPath dt_path(const ExchangeMatrix& b, const AdmissibleLabeling& pi) {
  if (!is_admissible(b, pi)) throw std::invalid_argument("labeling is not admissible for this quiver");
  return {b, pi.order};
}

inline MutationPath dt_path(const ExchangeMatrix& b) { return dt_path(b, admissible_labeling(b)); }

/// xi_v = x_v + sum_{u -> v} a_uv [xi_u]_-, indexed by vertex.
inline std::vector<Rational> xi_values(const ExchangeMatrix& b, const TropicalPoint& x) {
  require_dimension(x, b.size());
  const auto order = admissible_labeling(b).order;
  std::vector<Rational> xi(b.size());
  for (Vertex v : order) {
    Rational acc = x[v];
    for (std::size_t u = 0; u < b.size(); ++u)
      if (b(u, v) > 0 && xi[u] < 0) acc += Rational(b(u, v)) * xi[u];
    xi[v] = acc;
  }
  return xi;
}

/// eta-hat_v = x_v + sum_{v -> u} a_vu [eta-hat_u]_+, indexed by vertex.
inline std::vector<Rational> eta_by_vertex(const ExchangeMatrix& b, const TropicalPoint& x) {
  require_dimension(x, b.size());
  const auto order = admissible_labeling(b).order;
  std::vector<Rational> eta(b.size());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    Rational acc = x[v];
    for (std::size_t u = 0; u < b.size(); ++u)
      if (b(v, u) > 0 && eta[u] > 0) acc += Rational(b(v, u)) * eta[u];
    eta[v] = acc;
  }
  return eta;
}

/// eta_i is the value mutated at step i of the reversed loop, i.e. at vertex order[N-1-i].
inline std::vector<Rational> eta_values(const ExchangeMatrix& b, const TropicalPoint& x) {
  const auto by_vertex = eta_by_vertex(b, x);
  const auto order = admissible_labeling(b).order;
  std::vector<Rational> eta(b.size());
  for (std::size_t i = 0; i < order.size(); ++i) eta[i] = by_vertex[order[order.size() - 1 - i]];
  return eta;
}

/// x_i(tau w) = -xi_i + sum_{i -> j} a_ij [xi_j]_-
inline TropicalPoint apply_dt(const ExchangeMatrix& b, const TropicalPoint& x) {
  const auto xi = xi_values(b, x);
  TropicalPoint y(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    Rational acc = -xi[i];
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b(i, j) > 0 && xi[j] < 0) acc += Rational(b(i, j)) * xi[j];
    y[i] = acc;
  }
  return y;
}

/// x_i(tau^-1 w) = -eta_i + sum_{j -> i} a_ji [eta_j]_+
inline TropicalPoint apply_dt_inverse(const ExchangeMatrix& b, const TropicalPoint& x) {
  const auto eta = eta_by_vertex(b, x);
  TropicalPoint y(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    Rational acc = -eta[i];
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b(j, i) > 0 && eta[j] > 0) acc += Rational(b(j, i)) * eta[j];
    y[i] = acc;
  }
  return y;
}

inline TropicalPoint scale(const TropicalPoint& x, const Rational& t) {
  TropicalPoint y = x;
  for (auto& v : y) v *= t;
  return y;
}

inline TropicalPoint negate(const TropicalPoint& x) { return scale(x, Rational(-1)); }

inline TropicalPoint to_point(const std::vector<long long>& v) {
  TropicalPoint x;
  for (auto a : v) x.emplace_back(a);
  return x;
}

inline bool strictly_nonzero(const TropicalPoint& x) {
  return std::none_of(x.begin(), x.end(), [](const Rational& v) { return v == 0; });
}

inline bool in_positive_cone(const TropicalPoint& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& v) { return v >= 0; });
}

inline bool in_negative_cone(const TropicalPoint& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& v) { return v <= 0; });
}

inline std::string to_string(const TropicalPoint& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + to_string(x[i]);
  return s + ")";
}

}  // namespace clusterdt
