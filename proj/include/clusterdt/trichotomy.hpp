#pragma once

// Finite / tame / wild classification of connected acyclic quivers, checked
// against four criteria: Cartan form, Coxeter spectrum, sign stability of the
// DT loop and arrow multiplicities in the mutation class. Entropy summary.

#include "clusterdt/coxeter.hpp"
#include "clusterdt/quiver.hpp"
#include "clusterdt/stability.hpp"
#include "clusterdt/tropical.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace clusterdt {

enum class RepresentationType { Finite, Tame, Wild };

inline std::string to_string(RepresentationType t) {
  switch (t) {
    case RepresentationType::Finite: return "finite";
    case RepresentationType::Tame: return "tame";
    case RepresentationType::Wild: return "wild";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Mutation class up to simultaneous permutation.

/// Colour refinement on vertices; returns a colour rank per vertex, invariant under relabeling.
inline std::vector<std::size_t> refine_colours(const Matrix<std::int64_t>& b) {
  const std::size_t n = b.rows();
  std::vector<std::size_t> colour(n, 0);
  auto rank = [&](const std::vector<std::vector<std::int64_t>>& sig) {
    std::map<std::vector<std::int64_t>, std::size_t> ids;
    for (const auto& s : sig) ids.emplace(s, 0);
    std::size_t next = 0;
    for (auto& [s, id] : ids) id = next++;
    std::vector<std::size_t> out(n);
    for (std::size_t v = 0; v < n; ++v) out[v] = ids.at(sig[v]);
    return std::pair{out, next};
  };
  std::size_t classes = 0;
  for (;;) {
    std::vector<std::vector<std::int64_t>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::pair<std::int64_t, std::int64_t>> nb;
      for (std::size_t u = 0; u < n; ++u)
        if (u != v) nb.emplace_back(static_cast<std::int64_t>(colour[u]), b(v, u));
      std::sort(nb.begin(), nb.end());
      sig[v].push_back(static_cast<std::int64_t>(colour[v]));
      for (auto [c, w] : nb) {
        sig[v].push_back(c);
        sig[v].push_back(w);
      }
    }
    auto [next, count] = rank(sig);
    colour = std::move(next);
    if (count == classes) break;
    classes = count;
  }
  return colour;
}

struct CanonicalForm {
  Matrix<std::int64_t> matrix;
  bool exact = true;  // false when the permutation budget forced a non-canonical key
};

/// Lexicographically least matrix over the relabelings that respect the refined colours.
inline CanonicalForm canonical_form(const ExchangeMatrix& q, std::size_t budget = 50000) {
  const auto& b = q.matrix();
  const std::size_t n = b.rows();
  const auto colour = refine_colours(b);
  std::vector<std::vector<Vertex>> cells;
  for (std::size_t v = 0; v < n; ++v) {
    if (colour[v] >= cells.size()) cells.resize(colour[v] + 1);
    cells[colour[v]].push_back(v);
  }
  double count = 1;
  for (const auto& c : cells)
    for (std::size_t k = 2; k <= c.size(); ++k) count *= static_cast<double>(k);

  auto build = [&](const std::vector<Vertex>& order) {
    Matrix<std::int64_t> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = b(order[i], order[j]);
    return m;
  };

  if (count > static_cast<double>(budget)) {
    std::vector<Vertex> order;
    for (const auto& c : cells) order.insert(order.end(), c.begin(), c.end());
    return {build(order), false};
  }
  std::optional<Matrix<std::int64_t>> best;
  std::vector<std::vector<Vertex>> cur = cells;
  // Odometer over the permutations of each cell.
  std::function<void(std::size_t)> rec = [&](std::size_t cell) {
    if (cell == cur.size()) {
      std::vector<Vertex> order;
      for (const auto& c : cur) order.insert(order.end(), c.begin(), c.end());
      auto m = build(order);
      if (!best || m < *best) best = std::move(m);
      return;
    }
    std::sort(cur[cell].begin(), cur[cell].end());
    do {
      rec(cell + 1);
    } while (std::next_permutation(cur[cell].begin(), cur[cell].end()));
  };
  rec(0);
  return {std::move(*best), true};
}

struct KellerProbe {
  std::int64_t sup_multiplicity_found = 0;
  bool exhaustive = false;
  std::size_t classes_seen = 0;
  std::size_t depth_reached = 0;
  bool canonical = true;  // every key was an exact canonical form
};

/// BFS over the mutation class of `b` up to simultaneous permutation.
/// stop_at > 0 ends the search as soon as a multiplicity >= stop_at is seen.
inline KellerProbe keller_probe(const ExchangeMatrix& b, std::size_t max_depth = 8, std::size_t max_seeds = 5000,
                                std::int64_t stop_at = 0) {
  KellerProbe out;
  std::set<Matrix<std::int64_t>> seen;
  std::deque<std::pair<ExchangeMatrix, std::size_t>> queue;
  auto visit = [&](const ExchangeMatrix& q) {
    auto key = canonical_form(q);
    out.canonical = out.canonical && key.exact;
    return seen.insert(std::move(key.matrix)).second;
  };
  visit(b);
  queue.emplace_back(b, 0);
  out.sup_multiplicity_found = b.max_multiplicity();
  bool truncated = false;
  while (!queue.empty()) {
    if (stop_at > 0 && out.sup_multiplicity_found >= stop_at) {
      truncated = true;
      break;
    }
    auto [q, depth] = queue.front();
    queue.pop_front();
    out.depth_reached = std::max(out.depth_reached, depth);
    for (Vertex k = 0; k < q.size(); ++k) {
      ExchangeMatrix next;
      try {
        next = mutate_quiver(q, k);
      } catch (const std::overflow_error&) {
        // Multiplicities beyond int64: the class certainly continues.
        out.sup_multiplicity_found = std::numeric_limits<std::int64_t>::max();
        truncated = true;
        continue;
      }
      if (depth == max_depth || seen.size() >= max_seeds) {
        // Only check whether the class continues past the limits.
        if (!seen.contains(canonical_form(next).matrix)) truncated = true;
        continue;
      }
      if (!visit(next)) continue;
      out.sup_multiplicity_found = std::max(out.sup_multiplicity_found, next.max_multiplicity());
      queue.emplace_back(std::move(next), depth + 1);
    }
  }
  out.classes_seen = seen.size();
  out.exhaustive = !truncated;
  return out;
}

// ---------------------------------------------------------------------------

struct ClassifyOptions {
  StabilityOptions stability;
  bool run_keller = true;
  std::size_t keller_depth = 8;
  std::size_t keller_max_seeds = 5000;
  double tolerance = kDefaultTolerance;
};

struct TrichotomyReport {
  RepresentationType verdict = RepresentationType::Finite;
  StabilityVerdict by_sign_stability;
  CartanForm by_cartan;
  SpectralResult by_spectrum;
  std::optional<KellerProbe> keller_probe;

  std::optional<RepresentationType> sign_vote;
  RepresentationType cartan_vote = RepresentationType::Finite;
  RepresentationType spectrum_vote = RepresentationType::Finite;
  std::optional<RepresentationType> keller_vote;
  bool consistent = true;
  std::vector<std::string> disagreements;
};

class InconsistentMethods : public Error {
 public:
  explicit InconsistentMethods(TrichotomyReport r)
      : Error("classification methods disagree"), report(std::move(r)) {}
  TrichotomyReport report;
};

inline RepresentationType vote(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveDefinite: return RepresentationType::Finite;
    case Definiteness::PositiveSemidefiniteSingular: return RepresentationType::Tame;
    case Definiteness::Indefinite: return RepresentationType::Wild;
  }
  return RepresentationType::Wild;
}

/// rho = 1 with 1 an eigenvalue is tame, rho = 1 without it finite, rho > 1 wild.
inline RepresentationType vote(const SpectralResult& s) {
  if (!s.unit_spectrum) {
    if (s.lo <= 1) throw std::logic_error("Coxeter spectrum neither unimodular nor separated from 1");
    return RepresentationType::Wild;
  }
  const IntPolynomial x_minus_one{Integer(-1), Integer(1)};
  return exact_quotient(s.char_poly, x_minus_one) ? RepresentationType::Tame : RepresentationType::Finite;
}

inline std::optional<RepresentationType> vote(const StabilityVerdict& v) {
  switch (v.status) {
    case StabilityStatus::NotStable: return RepresentationType::Finite;
    case StabilityStatus::Stable:
      return v.stretch_factor->unit_spectrum ? RepresentationType::Tame : RepresentationType::Wild;
    case StabilityStatus::Inconclusive: return std::nullopt;
  }
  return std::nullopt;
}

inline std::optional<RepresentationType> vote(const KellerProbe& k) {
  if (k.sup_multiplicity_found >= 3) return RepresentationType::Wild;
  if (!k.exhaustive) return std::nullopt;
  return k.sup_multiplicity_found <= 1 ? RepresentationType::Finite : RepresentationType::Tame;
}

inline void require_connected_acyclic(const ExchangeMatrix& b) {
  if (!is_acyclic(b)) throw CyclicQuiver("classification requires an acyclic quiver");
  if (!is_connected(b)) throw PreconditionError("classification requires a connected quiver");
}

/// The Cartan class decides; every other method must agree with it or InconsistentMethods is thrown.
inline TrichotomyReport classify(const ExchangeMatrix& b, const ClassifyOptions& opts = {}) {
  require_connected_acyclic(b);
  TrichotomyReport r;
  r.by_cartan = cartan_form(b);
  r.cartan_vote = vote(r.by_cartan.cls);
  r.by_spectrum = spectral_radius(coxeter_matrix(b).phi, opts.tolerance);
  r.spectrum_vote = vote(r.by_spectrum);
  StabilityOptions so = opts.stability;
  so.tolerance = opts.tolerance;
  r.by_sign_stability = detect_basic_sign_stability(dt_path(b), so);
  r.sign_vote = vote(r.by_sign_stability);
  if (opts.run_keller) {
    r.keller_probe = keller_probe(b, opts.keller_depth, opts.keller_max_seeds, 3);
    r.keller_vote = vote(*r.keller_probe);
  }
  r.verdict = r.cartan_vote;
  auto check = [&](const char* name, std::optional<RepresentationType> v) {
    if (v && *v != r.verdict) {
      r.consistent = false;
      r.disagreements.push_back(std::string(name) + " says " + to_string(*v) + ", cartan form says " +
                                to_string(r.verdict));
    }
  };
  check("spectrum", r.spectrum_vote);
  check("sign stability", r.sign_vote);
  check("arrow multiplicities", r.keller_vote);
  if (r.by_sign_stability.stable_matrix && !(r.by_sign_stability.stable_matrix->e == coxeter_matrix(b).phi)) {
    r.consistent = false;
    r.disagreements.push_back("stable presentation matrix differs from the Coxeter matrix");
  }
  if (!r.consistent) throw InconsistentMethods(r);
  return r;
}

// ---------------------------------------------------------------------------

struct EntropyReport {
  RepresentationType type = RepresentationType::Finite;
  double h_algebraic = 0.0;
  double h_categorical = 0.0;
  /// log of the certified enclosure of the spectral radius
  double log_lo = 0.0;
  double log_hi = 0.0;
  SpectralResult rho;
  std::string source;
};

inline EntropyReport entropy_report(const ExchangeMatrix& b, double tol = kDefaultTolerance) {
  require_connected_acyclic(b);
  EntropyReport e;
  e.rho = spectral_radius(coxeter_matrix(b).phi, tol);
  e.type = vote(e.rho);
  if (e.type == RepresentationType::Wild) {
    e.log_lo = std::log(to_double(e.rho.lo));
    e.log_hi = std::log(to_double(e.rho.hi));
    e.h_algebraic = e.h_categorical = std::log(e.rho.rho);
    e.source = "representation infinite: algebraic and categorical entropies equal log rho(Phi)";
  } else {
    e.source = e.type == RepresentationType::Tame
                   ? "representation infinite (tame): entropies equal log rho(Phi) = 0"
                   : "representation finite: the DT loop has finite order, entropies vanish";
  }
  return e;
}

}  // namespace clusterdt
