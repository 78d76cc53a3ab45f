#include "streamcolor/generate.hpp"

#include <algorithm>
#include <set>

#include "streamcolor/game.hpp"

namespace streamcolor {

std::vector<Edge> gen_path(std::uint32_t n) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.push_back(Edge{v, v + 1});
  return edges;
}

std::vector<Edge> gen_clique(std::uint32_t n) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) edges.push_back(Edge{u, v});
  return edges;
}

std::vector<Edge> gen_gnp_capped(std::uint32_t n, std::uint32_t delta, std::uint64_t seed,
                                 double avg_degree) {
  if (n < 2 || delta == 0) return {};
  if (avg_degree <= 0.0) avg_degree = std::max(1.0, delta / 4.0);
  avg_degree = std::min(avg_degree, static_cast<double>(delta));
  const std::uint64_t target = static_cast<std::uint64_t>(avg_degree * n / 2.0);
  Rng rng(seed);
  std::set<Edge> chosen;
  std::vector<std::uint32_t> deg(n, 0);
  std::uint64_t attempts = 0;
  const std::uint64_t max_attempts = 40 * target + 1000;
  while (chosen.size() < target && attempts < max_attempts) {
    ++attempts;
    const VertexId u = static_cast<VertexId>(rng.below(n));
    const VertexId v = static_cast<VertexId>(rng.below(n));
    if (u == v || deg[u] >= delta || deg[v] >= delta) continue;
    const Edge e = Edge::canonical(u, v);
    if (chosen.insert(e).second) {
      ++deg[u];
      ++deg[v];
    }
  }
  return {chosen.begin(), chosen.end()};
}

std::vector<Edge> gen_regularish(std::uint32_t n, std::uint32_t delta, std::uint64_t seed) {
  Rng rng(seed);
  std::set<Edge> chosen;
  std::vector<std::uint32_t> deg(n, 0);
  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) order[v] = v;
  for (std::uint32_t round = 0; round < delta; ++round) {
    for (std::uint32_t i = n; i > 1; --i)
      std::swap(order[i - 1], order[rng.below(i)]);
    for (std::uint32_t i = 0; i + 1 < n; i += 2) {
      const VertexId u = order[i], v = order[i + 1];
      if (deg[u] >= delta || deg[v] >= delta) continue;
      const Edge e = Edge::canonical(u, v);
      if (chosen.insert(e).second) {
        ++deg[u];
        ++deg[v];
      }
    }
  }
  return {chosen.begin(), chosen.end()};
}

std::vector<std::vector<ColorId>> gen_lists(const std::vector<Edge>& edges, std::uint32_t n,
                                            std::uint64_t universe, std::uint64_t seed) {
  std::vector<std::uint32_t> deg(n, 0);
  for (const Edge& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  Rng rng(seed);
  std::vector<std::vector<ColorId>> lists(n);
  for (VertexId v = 0; v < n; ++v) {
    const std::uint64_t want = deg[v] + 1;
    if (want > universe)
      throw UsageError("universe too small for the degree distribution");
    std::set<ColorId> picked;
    while (picked.size() < want) picked.insert(static_cast<ColorId>(rng.below(universe)));
    lists[v] = {picked.begin(), picked.end()};
    for (std::uint32_t i = static_cast<std::uint32_t>(lists[v].size()); i > 1; --i)
      std::swap(lists[v][i - 1], lists[v][rng.below(i)]);
  }
  return lists;
}

std::vector<StreamToken> make_token_stream(const std::vector<Edge>& edges,
                                           const std::vector<std::vector<ColorId>>* lists,
                                           std::uint64_t seed) {
  std::vector<StreamToken> tokens;
  tokens.reserve(edges.size() + (lists ? lists->size() : 0));
  for (const Edge& e : edges) tokens.push_back(StreamToken::edge_token(e.u, e.v));
  if (lists)
    for (VertexId v = 0; v < lists->size(); ++v)
      tokens.push_back(StreamToken::list_token(v, (*lists)[v]));
  Rng rng(mix64(seed, 0x70c5));
  for (std::size_t i = tokens.size(); i > 1; --i)
    std::swap(tokens[i - 1], tokens[rng.below(i)]);
  return tokens;
}

std::vector<StreamToken> gen_adversary_replay(std::uint32_t n, std::uint32_t delta,
                                              std::uint64_t q, std::uint64_t seed,
                                              std::uint64_t inserts) {
  if (inserts == 0) inserts = static_cast<std::uint64_t>(n) * delta / 2;
  if (q == 0) q = 1;
  GameReferee referee(n, delta, 0);
  Rng rng(seed);
  std::vector<StreamToken> tokens;
  std::uint64_t since = 0;
  while (referee.inserts() < inserts) {
    const std::optional<Edge> e = random_legal_nonedge(rng, referee);
    if (!e) break;
    referee.record(*e);
    tokens.push_back(StreamToken::edge_token(e->u, e->v));
    if (++since == q) {
      tokens.push_back(StreamToken::query_token());
      since = 0;
    }
  }
  if (since != 0) tokens.push_back(StreamToken::query_token());
  return tokens;
}

}  // namespace streamcolor
