#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "streamcolor/common.hpp"

namespace streamcolor {

// Undirected edge stored canonically with u < v. Self-loops are rejected.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  static Edge canonical(VertexId a, VertexId b) {
    if (a == b) throw InputError("self-loop edge {" + std::to_string(a) + "}");
    return a < b ? Edge{a, b} : Edge{b, a};
  }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const {
    return static_cast<std::size_t>(mix64((std::uint64_t{e.u} << 32) | e.v, 0x9e37u));
  }
};

// Symmetric adjacency lists; no duplicate edges.
class AdjacencyGraph {
 public:
  AdjacencyGraph() = default;
  AdjacencyGraph(VertexId n, std::span<const Edge> edges, std::optional<std::uint32_t> delta_cap = {});

  VertexId vertex_count() const { return n_; }
  std::uint64_t edge_count() const { return m_; }
  std::span<const VertexId> neighbors(VertexId v) const { return adj_[v]; }
  std::uint32_t degree(VertexId v) const { return static_cast<std::uint32_t>(adj_[v].size()); }
  std::uint32_t max_degree() const;
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  VertexId n_ = 0;
  std::uint64_t m_ = 0;
  std::vector<std::vector<VertexId>> adj_;
  std::vector<Edge> edges_;
};

// Partial coloring (U, chi): chi[x] == kUncolored exactly when x is in U.
struct PartialColoring {
  std::vector<ColorId> chi;

  explicit PartialColoring(VertexId n = 0) : chi(n, kUncolored) {}

  bool is_colored(VertexId x) const { return chi[x] != kUncolored; }
  VertexId size() const { return static_cast<VertexId>(chi.size()); }

  std::uint64_t uncolored_count() const {
    std::uint64_t c = 0;
    for (ColorId col : chi) c += (col == kUncolored);
    return c;
  }

  std::vector<VertexId> uncolored_set() const {
    std::vector<VertexId> u;
    for (VertexId x = 0; x < chi.size(); ++x)
      if (chi[x] == kUncolored) u.push_back(x);
    return u;
  }

  std::uint64_t distinct_colors() const;
};

// Returns exactly the edges whose endpoints are both colored with the same
// color; an empty result certifies properness.
std::vector<Edge> check_proper(std::span<const Edge> edges, const PartialColoring& coloring);

// Colors the vertices of `order` in sequence, assigning each the
// smallest-index color in its list not used by an already-colored neighbor.
// Default list is [0, max_degree]. `base` seeds an existing partial coloring
// that the greedy pass extends.
PartialColoring greedy_color(const AdjacencyGraph& graph, std::span<const VertexId> order,
                             const std::vector<std::vector<ColorId>>* lists = nullptr,
                             const PartialColoring* base = nullptr);

struct DegeneracyResult {
  std::uint32_t kappa = 0;
  std::vector<VertexId> ordering;  // min-degree peeling order
};

// kappa = degeneracy; every vertex has at most kappa neighbors later in the
// peeling order.
DegeneracyResult degeneracy_peel(const AdjacencyGraph& graph);

// Proper coloring with at most degeneracy+1 colors: greedy over the reverse
// peeling order.
PartialColoring degeneracy_plus_one_color(const AdjacencyGraph& graph);

// Constructive Turan bound: independent set of size >= ceil(n^2 / (2m + n)).
// Repeatedly selects the vertex minimizing sum_{y in N[x]} 1/(deg(y)+1) over
// the surviving subgraph, ties broken by smallest vertex id.
std::vector<VertexId> find_independent_set(const AdjacencyGraph& graph);

std::uint64_t turan_bound(std::uint64_t n, std::uint64_t m);

// Smallest prime in [lo, hi], by trial division.
std::uint64_t prime_in_range(std::uint64_t lo, std::uint64_t hi);

// Edge-list text format: one "u v" pair per line, '#' starts a comment line.
std::vector<Edge> read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, std::span<const Edge> edges);

}  // namespace streamcolor
