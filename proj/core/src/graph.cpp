#include "streamcolor/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

namespace streamcolor {

AdjacencyGraph::AdjacencyGraph(VertexId n, std::span<const Edge> edges,
                               std::optional<std::uint32_t> delta_cap)
    : n_(n), adj_(n) {
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n)
      throw InputError("edge endpoint out of range: {" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + "} with n=" + std::to_string(n));
    Edge c = Edge::canonical(e.u, e.v);
    edges_.push_back(c);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw InputError("duplicate edge in input");
  m_ = edges_.size();
  for (const Edge& e : edges_) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  if (delta_cap) {
    for (VertexId v = 0; v < n_; ++v)
      if (adj_[v].size() > *delta_cap)
        throw InputError("vertex " + std::to_string(v) + " has degree " +
                         std::to_string(adj_[v].size()) + " > Delta=" + std::to_string(*delta_cap));
  }
}

std::uint32_t AdjacencyGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& a : adj_) d = std::max(d, a.size());
  return static_cast<std::uint32_t>(d);
}

std::uint64_t PartialColoring::distinct_colors() const {
  std::vector<ColorId> used;
  for (ColorId c : chi)
    if (c != kUncolored) used.push_back(c);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  return used.size();
}

std::vector<Edge> check_proper(std::span<const Edge> edges, const PartialColoring& coloring) {
  std::vector<Edge> bad;
  for (const Edge& e : edges) {
    if (e.u >= coloring.size() || e.v >= coloring.size())
      throw InputError("check_proper: endpoint out of range");
    const ColorId cu = coloring.chi[e.u];
    const ColorId cv = coloring.chi[e.v];
    if (cu != kUncolored && cv != kUncolored && cu == cv) bad.push_back(e);
  }
  return bad;
}

PartialColoring greedy_color(const AdjacencyGraph& graph, std::span<const VertexId> order,
                             const std::vector<std::vector<ColorId>>* lists,
                             const PartialColoring* base) {
  PartialColoring out = base ? *base : PartialColoring(graph.vertex_count());
  if (out.size() != graph.vertex_count()) throw InputError("greedy_color: base size mismatch");
  std::vector<ColorId> taken;
  for (VertexId x : order) {
    if (x >= graph.vertex_count()) throw InputError("greedy_color: vertex out of range");
    if (out.is_colored(x)) continue;
    taken.clear();
    for (VertexId y : graph.neighbors(x))
      if (out.is_colored(y)) taken.push_back(out.chi[y]);
    std::sort(taken.begin(), taken.end());
    taken.erase(std::unique(taken.begin(), taken.end()), taken.end());
    ColorId chosen = kUncolored;
    if (lists) {
      for (ColorId c : (*lists)[x]) {
        if (!std::binary_search(taken.begin(), taken.end(), c)) {
          chosen = c;
          break;
        }
      }
    } else {
      // Default palette [0, max_degree]: the smallest absent value works.
      ColorId c = 0;
      for (ColorId t : taken) {
        if (t > c) break;
        if (t == c) ++c;
      }
      chosen = c;
    }
    if (chosen == kUncolored)
      throw TheoryViolation("greedy_color: list exhausted at vertex " + std::to_string(x));
    out.chi[x] = chosen;
  }
  return out;
}

DegeneracyResult degeneracy_peel(const AdjacencyGraph& graph) {
  const VertexId n = graph.vertex_count();
  DegeneracyResult res;
  res.ordering.reserve(n);
  std::vector<std::uint32_t> deg(n);
  std::set<std::pair<std::uint32_t, VertexId>> queue;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = graph.degree(v);
    queue.insert({deg[v], v});
  }
  std::vector<bool> removed(n, false);
  while (!queue.empty()) {
    auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    res.kappa = std::max(res.kappa, d);
    res.ordering.push_back(v);
    removed[v] = true;
    for (VertexId y : graph.neighbors(v)) {
      if (removed[y]) continue;
      queue.erase({deg[y], y});
      --deg[y];
      queue.insert({deg[y], y});
    }
  }
  return res;
}

PartialColoring degeneracy_plus_one_color(const AdjacencyGraph& graph) {
  DegeneracyResult peel = degeneracy_peel(graph);
  std::reverse(peel.ordering.begin(), peel.ordering.end());
  return greedy_color(graph, peel.ordering);
}

std::vector<VertexId> find_independent_set(const AdjacencyGraph& graph) {
  const VertexId n = graph.vertex_count();
  std::vector<VertexId> independent;
  std::vector<bool> alive(n, true);
  std::vector<std::uint32_t> deg(n);
  for (VertexId v = 0; v < n; ++v) deg[v] = graph.degree(v);
  std::uint64_t remaining = n;
  while (remaining > 0) {
    VertexId best = kUncolored;
    double best_score = 0.0;
    for (VertexId x = 0; x < n; ++x) {
      if (!alive[x]) continue;
      double score = 1.0 / (deg[x] + 1.0);
      for (VertexId y : graph.neighbors(x))
        if (alive[y]) score += 1.0 / (deg[y] + 1.0);
      if (best == kUncolored || score < best_score) {
        best = x;
        best_score = score;
      }
    }
    independent.push_back(best);
    // Remove the closed neighborhood of the pick.
    std::vector<VertexId> gone;
    gone.push_back(best);
    for (VertexId y : graph.neighbors(best))
      if (alive[y]) gone.push_back(y);
    for (VertexId g : gone) {
      alive[g] = false;
      --remaining;
    }
    for (VertexId g : gone)
      for (VertexId y : graph.neighbors(g))
        if (alive[y]) --deg[y];
  }
  std::sort(independent.begin(), independent.end());
  return independent;
}

std::uint64_t turan_bound(std::uint64_t n, std::uint64_t m) {
  if (n == 0) return 0;
  const std::uint64_t denom = 2 * m + n;
  return (n * n + denom - 1) / denom;
}

namespace {
bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d * d <= v; d += 2)
    if (v % d == 0) return false;
  return true;
}
}  // namespace

std::uint64_t prime_in_range(std::uint64_t lo, std::uint64_t hi) {
  // Exclusive lower endpoint: the first prime strictly above lo.
  for (std::uint64_t v = std::max<std::uint64_t>(lo, 1) + 1; v <= hi; ++v)
    if (is_prime(v)) return v;
  throw InputError("no prime in (" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::vector<Edge> read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::uint64_t a, b;
    if (!(ls >> a >> b))
      throw InputError("edge list parse error at line " + std::to_string(lineno));
    edges.push_back(Edge::canonical(static_cast<VertexId>(a), static_cast<VertexId>(b)));
  }
  return edges;
}

void write_edge_list(std::ostream& out, std::span<const Edge> edges) {
  for (const Edge& e : edges) out << e.u << ' ' << e.v << '\n';
}

}  // namespace streamcolor
