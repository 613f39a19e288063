#pragma once

// Exchange matrices of loop-free, 2-cycle-free quivers: mutation, vertex
// relabeling, topological (admissible) labelings, the symmetric Cartan form and
// framed seeds that carry the C-matrix along a mutation sequence.

#include "clusterdt/arith.hpp"
#include "clusterdt/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <span>
#include <string>
#include <vector>

namespace clusterdt {

using Vertex = std::size_t;

/// `multiplicity` arrows from `source` to `target`.
struct Arrow {
  Vertex source = 0;
  Vertex target = 0;
  std::int64_t multiplicity = 1;
  bool operator==(const Arrow&) const = default;
};

/// Skew-symmetric integer matrix; b(i, j) > 0 counts arrows i -> j.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;

  explicit ExchangeMatrix(Matrix<std::int64_t> b) : b_(std::move(b)) {
    if (!b_.square()) throw std::invalid_argument("exchange matrix must be square");
    for (std::size_t i = 0; i < b_.rows(); ++i) {
      if (b_(i, i) != 0) throw std::invalid_argument("exchange matrix must have a zero diagonal");
      for (std::size_t j = i + 1; j < b_.cols(); ++j)
        if (b_(i, j) != -b_(j, i))
          throw std::invalid_argument("exchange matrix is not skew-symmetric at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
    }
  }

  ExchangeMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
      : ExchangeMatrix(Matrix<std::int64_t>(rows)) {}

  static ExchangeMatrix from_arrows(std::size_t n, std::span<const Arrow> arrows) {
    Matrix<std::int64_t> b(n, n);
    for (const Arrow& a : arrows) {
      if (a.source >= n || a.target >= n) throw std::invalid_argument("arrow endpoint out of range");
      if (a.source == a.target) throw std::invalid_argument("loops are not allowed");
      if (a.multiplicity <= 0) throw std::invalid_argument("arrow multiplicity must be positive");
      if (b(a.target, a.source) > 0) throw std::invalid_argument("2-cycles are not allowed");
      b(a.source, a.target) = checked_add(b(a.source, a.target), a.multiplicity);
      b(a.target, a.source) = -b(a.source, a.target);
    }
    return ExchangeMatrix(std::move(b));
  }

  static ExchangeMatrix from_arrows(std::size_t n, std::initializer_list<Arrow> arrows) {
    return from_arrows(n, std::span<const Arrow>(arrows.begin(), arrows.size()));
  }

  std::size_t size() const { return b_.rows(); }
  std::int64_t operator()(Vertex i, Vertex j) const { return b_(i, j); }
  const Matrix<std::int64_t>& matrix() const { return b_; }

  /// Number of arrows i -> j, i.e. [b_ij]_+.
  std::int64_t arrows(Vertex i, Vertex j) const { return positive_part(b_(i, j)); }

  /// A with A_ij = [b_ij]_+, as big integers.
  IntMatrix arrow_matrix() const {
    IntMatrix a(size(), size());
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) a(i, j) = arrows(i, j);
    return a;
  }

  std::vector<Arrow> arrow_list() const {
    std::vector<Arrow> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (b_(i, j) > 0) out.push_back({i, j, b_(i, j)});
    return out;
  }

  ExchangeMatrix opposite() const { return ExchangeMatrix(-b_); }

  std::int64_t max_multiplicity() const {
    std::int64_t m = 0;
    for (auto v : b_.data()) m = std::max(m, abs_value(v));
    return m;
  }

  bool operator==(const ExchangeMatrix&) const = default;
  bool operator<(const ExchangeMatrix& o) const { return b_ < o.b_; }

  std::string str() const { return b_.str(); }

 private:
  Matrix<std::int64_t> b_;
};

/// Matrix mutation at mutable index k. Rows/columns beyond the mutable range
/// are treated as frozen; the formula itself is the same for both.
template <class T>
Matrix<T> mutate_matrix(const Matrix<T>& b, std::size_t k) {
  if (k >= b.rows() || k >= b.cols()) throw std::out_of_range("mutation index out of range");
  Matrix<T> out = b;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (i == k || j == k) {
        out(i, j) = checked_neg(b(i, j));
        continue;
      }
      const T& bik = b(i, k);
      const T& bkj = b(k, j);
      if (bik > 0 && bkj > 0)
        out(i, j) = checked_add(b(i, j), checked_mul(bik, bkj));
      else if (bik < 0 && bkj < 0)
        out(i, j) = checked_sub(b(i, j), checked_mul(bik, bkj));
    }
  return out;
}

inline ExchangeMatrix mutate_quiver(const ExchangeMatrix& b, Vertex k) {
  if (k >= b.size()) throw std::out_of_range("vertex " + std::to_string(k) + " out of range");
  return ExchangeMatrix(mutate_matrix(b.matrix(), k));
}

/// sigma(i) is the new label of vertex i.
using Permutation = std::vector<std::size_t>;

inline void require_permutation(const Permutation& sigma, std::size_t n) {
  if (sigma.size() != n) throw std::invalid_argument("permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (auto v : sigma) {
    if (v >= n || seen[v]) throw std::invalid_argument("malformed permutation");
    seen[v] = true;
  }
}

inline Permutation inverse_permutation(const Permutation& sigma) {
  require_permutation(sigma, sigma.size());
  Permutation inv(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = i;
  return inv;
}

/// b'_ij = b_{sigma^-1(i), sigma^-1(j)}
inline ExchangeMatrix permute_quiver(const ExchangeMatrix& b, const Permutation& sigma) {
  require_permutation(sigma, b.size());
  const auto inv = inverse_permutation(sigma);
  Matrix<std::int64_t> out(b.size(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out(i, j) = b(inv[i], inv[j]);
  return ExchangeMatrix(std::move(out));
}

/// order[p] is the vertex placed at position p; arrows go to later positions.
struct AdmissibleLabeling {
  std::vector<Vertex> order;

  /// position()[v] is the position of vertex v, i.e. the relabeling permutation.
  Permutation position() const { return inverse_permutation(order); }
  bool operator==(const AdmissibleLabeling&) const = default;
};

inline bool is_admissible(const ExchangeMatrix& b, const AdmissibleLabeling& pi) {
  if (pi.order.size() != b.size()) return false;
  try {
    require_permutation(pi.order, b.size());
  } catch (const std::invalid_argument&) {
    return false;
  }
  const auto pos = pi.position();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b(i, j) > 0 && pos[i] >= pos[j]) return false;
  return true;
}

/// Kahn's algorithm, always taking the smallest available source.
inline AdmissibleLabeling admissible_labeling(const ExchangeMatrix& b) {
  const std::size_t n = b.size();
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b(i, j) > 0) ++indegree[j];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  AdmissibleLabeling pi;
  while (!ready.empty()) {
    const Vertex v = ready.top();
    ready.pop();
    pi.order.push_back(v);
    for (std::size_t j = 0; j < n; ++j)
      if (b(v, j) > 0 && --indegree[j] == 0) ready.push(j);
  }
  if (pi.order.size() != n) throw CyclicQuiver();
  return pi;
}

inline bool is_acyclic(const ExchangeMatrix& b) {
  try {
    admissible_labeling(b);
    return true;
  } catch (const CyclicQuiver&) {
    return false;
  }
}

/// The same quiver with vertex v renamed to its admissible position.
inline ExchangeMatrix relabel_admissibly(const ExchangeMatrix& b) {
  return permute_quiver(b, admissible_labeling(b).position());
}

/// Connectedness of the underlying undirected graph. The empty quiver is not connected.
inline bool is_connected(const ExchangeMatrix& b) {
  const std::size_t n = b.size();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j)
      if (b(v, j) != 0 && !seen[j]) {
        seen[j] = true;
        ++count;
        stack.push_back(j);
      }
  }
  return count == n;
}

enum class Definiteness { PositiveDefinite, PositiveSemidefiniteSingular, Indefinite };

inline std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveDefinite: return "positive_definite";
    case Definiteness::PositiveSemidefiniteSingular: return "positive_semidefinite_singular";
    case Definiteness::Indefinite: return "indefinite";
  }
  return "?";
}

/// Inertia class of a symmetric rational matrix by exact symmetric elimination.
/// Each positive pivot is eliminated through a Schur complement, which keeps the
/// inertia of the remaining block.
inline Definiteness classify_symmetric(const Matrix<Rational>& s_in) {
  Matrix<Rational> s = s_in;
  const std::size_t n = s.rows();
  std::vector<bool> done(n, false);
  std::size_t pivots = 0;
  for (;;) {
    std::size_t p = n;
    bool negative_diagonal = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (s(i, i) > 0 && p == n) p = i;
      if (s(i, i) < 0) negative_diagonal = true;
    }
    if (negative_diagonal) return Definiteness::Indefinite;
    if (p == n) break;
    done[p] = true;
    ++pivots;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || s(i, p) == 0) continue;
      const Rational f = s(i, p) / s(p, p);
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) s(i, j) -= f * s(p, j);
    }
    for (std::size_t i = 0; i < n; ++i) s(i, p) = s(p, i) = 0;
  }
  if (pivots == n) return Definiteness::PositiveDefinite;
  // Remaining block has zero diagonal; a nonzero off-diagonal entry gives a
  // negative 2x2 principal minor.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!done[i] && !done[j] && s(i, j) != 0) return Definiteness::Indefinite;
  return Definiteness::PositiveSemidefiniteSingular;
}

struct CartanForm {
  Matrix<std::int64_t> matrix;
  Definiteness cls = Definiteness::PositiveDefinite;
};

/// 2 Id - (A + A^T).
inline CartanForm cartan_form(const ExchangeMatrix& b) {
  if (!is_acyclic(b)) throw CyclicQuiver("cartan_form requires an acyclic quiver");
  const std::size_t n = b.size();
  CartanForm c;
  c.matrix = Matrix<std::int64_t>(n, n);
  Matrix<Rational> q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      c.matrix(i, j) = (i == j ? 2 : 0) - abs_value(b(i, j));
      q(i, j) = c.matrix(i, j);
    }
  c.cls = classify_symmetric(q);
  return c;
}

/// Thrown when a c-vector loses sign coherence; this can only be an implementation bug.
class SignCoherenceViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline bool sign_coherent(const std::vector<Integer>& v) {
  bool pos = false, neg = false;
  for (const auto& x : v) {
    pos = pos || x > 0;
    neg = neg || x < 0;
  }
  return (pos || neg) && !(pos && neg);
}

/// Labeled seed identified by its exchange matrix and C-matrix (columns are
/// c-vectors). Framing convention: each mutable vertex i has one arrow i -> i'.
struct FramedSeed {
  ExchangeMatrix b;
  IntMatrix c;

  static FramedSeed initial(const ExchangeMatrix& b) { return {b, IntMatrix::identity(b.size())}; }

  std::size_t size() const { return b.size(); }
  int tropical_sign(Vertex k) const {
    for (std::size_t i = 0; i < c.rows(); ++i)
      if (c(i, k) != 0) return sign_of(c(i, k));
    return 0;
  }

  bool operator==(const FramedSeed&) const = default;
  bool operator<(const FramedSeed& o) const {
    if (!(b == o.b)) return b < o.b;
    return c < o.c;
  }
};

inline void require_sign_coherent(const FramedSeed& s) {
  for (std::size_t k = 0; k < s.size(); ++k)
    if (!sign_coherent(s.c.column(k)))
      throw SignCoherenceViolation("c-vector " + std::to_string(k) + " is not sign-coherent: " + s.c.str());
}

/// Mutation of the 2N x 2N framed exchange matrix [[B, C^T], [-C, 0]] at k.
inline FramedSeed mutate_seed(const FramedSeed& s, Vertex k) {
  const std::size_t n = s.size();
  if (k >= n) throw std::out_of_range("vertex " + std::to_string(k) + " out of range");
  if (!sign_coherent(s.c.column(k)))
    throw SignCoherenceViolation("c-vector " + std::to_string(k) + " is not sign-coherent before mutation");
  IntMatrix framed(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      framed(i, j) = s.b(i, j);
      framed(i, n + j) = s.c(j, i);
      framed(n + j, i) = -s.c(j, i);
    }
  const IntMatrix m = mutate_matrix(framed, k);
  Matrix<std::int64_t> b(n, n);
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      b(i, j) = m(i, j).convert_to<std::int64_t>();
      if (m(i, j) != b(i, j)) throw std::overflow_error("exchange matrix entry exceeds int64");
      c(j, i) = m(i, n + j);
    }
  FramedSeed out{ExchangeMatrix(std::move(b)), std::move(c)};
  require_sign_coherent(out);
  return out;
}

}  // namespace clusterdt
