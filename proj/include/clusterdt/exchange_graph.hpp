#pragma once

// Labeled exchange graphs (horizontal edges only), seeds identified by their
// (B, C) pair; DT-loop checks and orders of mutation loops.

#include "clusterdt/quiver.hpp"
#include "clusterdt/tropical.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace clusterdt {

struct ExchangeEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Vertex k = 0;
  bool operator==(const ExchangeEdge&) const = default;
};

struct LabeledExchangeGraph {
  std::vector<FramedSeed> vertices;
  std::vector<ExchangeEdge> edges;  // both orientations of every edge
  std::size_t initial = 0;
  bool complete = false;

  std::size_t undirected_edge_count() const { return edges.size() / 2; }
};

/// Breadth-first search, mutation directions in increasing order. New seeds beyond
/// max_seeds are not added; the graph is then incomplete.
inline LabeledExchangeGraph explore(const FramedSeed& start, std::size_t max_seeds) {
  if (max_seeds == 0) throw std::invalid_argument("max_seeds must be at least 1");
  LabeledExchangeGraph g;
  std::map<FramedSeed, std::size_t> id;
  g.vertices.push_back(start);
  id.emplace(start, 0);
  g.complete = true;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    for (Vertex k = 0; k < start.size(); ++k) {
      FramedSeed next = mutate_seed(g.vertices[v], k);
      auto it = id.find(next);
      if (it == id.end()) {
        if (g.vertices.size() >= max_seeds) {
          g.complete = false;
          continue;
        }
        it = id.emplace(next, g.vertices.size()).first;
        g.vertices.push_back(std::move(next));
      }
      g.edges.push_back({v, it->second, k});
    }
  }
  return g;
}

inline LabeledExchangeGraph explore(const ExchangeMatrix& b, std::size_t max_seeds) {
  return explore(FramedSeed::initial(b), max_seeds);
}

/// Node-edge list in Graphviz DOT; each undirected edge once, labeled by its direction.
inline std::string to_dot(const LabeledExchangeGraph& g, const std::string& name = "exchange_graph") {
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    os << "  v" << v << " [label=\"C=" << g.vertices[v].c.str() << "\"" << (v == g.initial ? ", shape=box" : "")
       << "];\n";
  for (const auto& e : g.edges)
    if (e.from < e.to) os << "  v" << e.from << " -- v" << e.to << " [label=\"" << e.k << "\"];\n";
  os << "}\n";
  return os.str();
}

/// Mutating along pi returns the initial exchange matrix, and each step mutates at a source.
inline bool verify_dt_loop(const ExchangeMatrix& b, const AdmissibleLabeling& pi) {
  if (!is_acyclic(b)) throw CyclicQuiver("verify_dt_loop requires an acyclic quiver");
  if (!is_admissible(b, pi)) throw std::invalid_argument("labeling is not admissible for this quiver");
  ExchangeMatrix q = b;
  for (Vertex k : pi.order) {
    for (std::size_t j = 0; j < q.size(); ++j)
      if (q(j, k) > 0)
        throw std::logic_error("vertex " + std::to_string(k) + " is not a source when it is mutated");
    q = mutate_quiver(q, k);
  }
  return q == b;
}

inline FramedSeed apply_path(const FramedSeed& s, const MutationPath& gamma) {
  FramedSeed cur = s;
  for (Vertex k : gamma.steps) cur = mutate_seed(cur, k);
  return cur;
}

/// Least m <= max_order with gamma^m acting trivially on the initial labeled seed.
inline std::optional<std::size_t> loop_order(const ExchangeMatrix& b, const MutationPath& gamma, std::size_t max_order) {
  if (!(gamma.base == b)) throw std::invalid_argument("path does not start at this exchange matrix");
  require_closed(gamma);
  const FramedSeed start = FramedSeed::initial(b);
  if (gamma.steps.empty()) return 1;
  FramedSeed cur = start;
  for (std::size_t m = 1; m <= max_order; ++m) {
    cur = apply_path(cur, gamma);
    if (cur == start) return m;
  }
  return std::nullopt;
}

}  // namespace clusterdt
