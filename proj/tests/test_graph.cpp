#include "doctest.h"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "streamcolor/generate.hpp"
#include "streamcolor/graph.hpp"

using namespace streamcolor;

namespace {

const std::vector<Edge> kPetersen = {
    {0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},  // outer cycle
    {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8},  // inner star
    {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},  // spokes
};

// Max independent set by exhaustive subset search.
std::uint64_t brute_max_independent(const AdjacencyGraph& g) {
  const VertexId n = g.vertex_count();
  std::uint64_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const Edge& e : g.edges())
      if ((mask >> e.u & 1) && (mask >> e.v & 1)) {
        ok = false;
        break;
      }
    if (ok) best = std::max<std::uint64_t>(best, __builtin_popcount(mask));
  }
  return best;
}

// Degeneracy by exhaustive minimum over induced subgraphs.
std::uint32_t brute_degeneracy(const AdjacencyGraph& g) {
  const VertexId n = g.vertex_count();
  std::uint32_t kappa = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::uint32_t mindeg = n;
    for (VertexId v = 0; v < n; ++v) {
      if (!(mask >> v & 1)) continue;
      std::uint32_t d = 0;
      for (VertexId y : g.neighbors(v))
        if (mask >> y & 1) ++d;
      mindeg = std::min(mindeg, d);
    }
    kappa = std::max(kappa, mindeg);
  }
  return kappa;
}

bool is_independent(const AdjacencyGraph& g, const std::vector<VertexId>& set) {
  std::set<VertexId> s(set.begin(), set.end());
  for (const Edge& e : g.edges())
    if (s.count(e.u) && s.count(e.v)) return false;
  return true;
}

}  // namespace

TEST_CASE("check_proper basics") {
  const std::vector<Edge> triangle = {{0, 1}, {1, 2}, {0, 2}};
  PartialColoring c(3);
  c.chi = {1, 2, 3};
  CHECK(check_proper(triangle, c).empty());

  PartialColoring bad(2);
  bad.chi = {1, 1};
  const std::vector<Edge> one = {{0, 1}};
  const auto violations = check_proper(one, bad);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0] == Edge{0, 1});

  PartialColoring partial(2);
  partial.chi = {1, kUncolored};
  CHECK(check_proper(one, partial).empty());

  CHECK_THROWS_AS(check_proper(std::vector<Edge>{{0, 5}}, bad), InputError);
}

TEST_CASE("check_proper equals a pairwise scan on random partial colorings") {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t n = 4 + rng.below(9);
    const auto edges = gen_gnp_capped(n, n - 1, rng.next(), 2.0);
    PartialColoring c(n);
    for (VertexId v = 0; v < n; ++v)
      c.chi[v] = rng.chance(0.3) ? kUncolored : static_cast<ColorId>(rng.below(4));
    std::vector<Edge> brute;
    for (const Edge& e : edges)
      if (c.chi[e.u] != kUncolored && c.chi[e.u] == c.chi[e.v]) brute.push_back(e);
    std::sort(brute.begin(), brute.end());
    auto got = check_proper(edges, c);
    std::sort(got.begin(), got.end());
    CHECK(got == brute);
  }
}

TEST_CASE("greedy_color on a path uses colors 0 1 0") {
  const std::vector<Edge> path = {{0, 1}, {1, 2}};
  AdjacencyGraph g(3, path);
  const std::vector<VertexId> order = {0, 1, 2};
  const PartialColoring c = greedy_color(g, order);
  CHECK(c.chi == std::vector<ColorId>{0, 1, 0});
}

TEST_CASE("greedy_color on K4 uses all four colors") {
  const auto edges = gen_clique(4);
  AdjacencyGraph g(4, edges);
  const std::vector<VertexId> order = {0, 1, 2, 3};
  const PartialColoring c = greedy_color(g, order);
  CHECK(check_proper(edges, c).empty());
  CHECK(c.distinct_colors() == 4);
  CHECK(*std::max_element(c.chi.begin(), c.chi.end()) == 3);
}

TEST_CASE("greedy_color respects lists on a star") {
  // Star K_{1,5}: center 0, leaves 1..5, lists of size deg+1.
  std::vector<Edge> edges;
  for (VertexId v = 1; v <= 5; ++v) edges.push_back(Edge{0, v});
  AdjacencyGraph g(6, edges);
  std::vector<std::vector<ColorId>> lists = {
      {7, 8, 9, 10, 11, 12},  // center: deg 5
      {7, 20}, {7, 21}, {7, 22}, {8, 23}, {8, 24},
  };
  std::vector<VertexId> order = {0, 1, 2, 3, 4, 5};
  const PartialColoring c = greedy_color(g, order, &lists);
  CHECK(check_proper(edges, c).empty());
  for (VertexId v = 0; v < 6; ++v) {
    CHECK(std::count(lists[v].begin(), lists[v].end(), c.chi[v]) == 1);
  }
  // Feasibility holds by brute force: some proper list coloring exists.
  bool feasible = false;
  std::vector<std::size_t> pick(6, 0);
  const std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (feasible) return;
    if (v == 6) {
      PartialColoring probe(6);
      for (VertexId x = 0; x < 6; ++x) probe.chi[x] = lists[x][pick[x]];
      if (check_proper(edges, probe).empty()) feasible = true;
      return;
    }
    for (pick[v] = 0; pick[v] < lists[v].size(); ++pick[v]) rec(v + 1);
  };
  rec(0);
  CHECK(feasible);
}

TEST_CASE("greedy list choice always lands in the list") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t n = 3 + rng.below(10);
    const auto edges = gen_gnp_capped(n, n - 1, rng.next(), 2.5);
    AdjacencyGraph g(n, edges);
    auto lists = gen_lists(edges, n, 4 * n, rng.next());
    std::vector<VertexId> order(n);
    for (VertexId v = 0; v < n; ++v) order[v] = v;
    const PartialColoring c = greedy_color(g, order, &lists);
    CHECK(check_proper(edges, c).empty());
    for (VertexId v = 0; v < n; ++v)
      CHECK(std::count(lists[v].begin(), lists[v].end(), c.chi[v]) == 1);
  }
}

TEST_CASE("degeneracy of K4, trees, Petersen") {
  {
    AdjacencyGraph k4(4, gen_clique(4));
    CHECK(degeneracy_peel(k4).kappa == 3);
  }
  {
    AdjacencyGraph tree(6, std::vector<Edge>{{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}});
    CHECK(degeneracy_peel(tree).kappa == 1);
    AdjacencyGraph path(5, gen_path(5));
    CHECK(degeneracy_peel(path).kappa == 1);
  }
  {
    AdjacencyGraph petersen(10, kPetersen);
    CHECK(degeneracy_peel(petersen).kappa == 3);
    CHECK(degeneracy_peel(petersen).kappa == brute_degeneracy(petersen));
  }
}

TEST_CASE("peeling order leaves at most kappa later neighbors") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t n = 5 + rng.below(40);
    const auto edges = gen_gnp_capped(n, 12, rng.next(), 4.0);
    AdjacencyGraph g(n, edges);
    const auto [kappa, ordering] = degeneracy_peel(g);
    std::vector<std::uint32_t> pos(n);
    for (std::uint32_t i = 0; i < n; ++i) pos[ordering[i]] = i;
    for (VertexId v = 0; v < n; ++v) {
      std::uint32_t later = 0;
      for (VertexId y : g.neighbors(v))
        if (pos[y] > pos[v]) ++later;
      CHECK(later <= kappa);
    }
  }
}

TEST_CASE("degeneracy_plus_one_color bounds") {
  {
    AdjacencyGraph c5(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    const PartialColoring c = degeneracy_plus_one_color(c5);
    CHECK(check_proper(c5.edges(), c).empty());
    CHECK(c.distinct_colors() <= 3);
  }
  {
    AdjacencyGraph k4(4, gen_clique(4));
    CHECK(degeneracy_plus_one_color(k4).distinct_colors() == 4);
  }
  Rng rng(13);
  for (int trial = 0; trial < 15; ++trial) {
    const std::uint32_t n = 6 + rng.below(50);
    const auto edges = gen_gnp_capped(n, 10, rng.next(), 5.0);
    AdjacencyGraph g(n, edges);
    const PartialColoring c = degeneracy_plus_one_color(g);
    CHECK(check_proper(edges, c).empty());
    CHECK(c.distinct_colors() <= degeneracy_peel(g).kappa + 1);
  }
}

TEST_CASE("find_independent_set meets the n^2/(2m+n) bound") {
  {
    AdjacencyGraph empty(5, std::vector<Edge>{});
    CHECK(find_independent_set(empty).size() == 5);
  }
  {
    AdjacencyGraph k6(6, gen_clique(6));
    const auto set = find_independent_set(k6);
    CHECK(set.size() == 1);
    CHECK(turan_bound(6, 15) == 1);
  }
  {
    AdjacencyGraph petersen(10, kPetersen);
    const auto set = find_independent_set(petersen);
    CHECK(is_independent(petersen, set));
    CHECK(set.size() >= 3);  // bound: ceil(100/40)
    CHECK(turan_bound(10, 15) == 3);
    CHECK(brute_max_independent(petersen) == 4);
  }
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t n = 4 + rng.below(60);
    const auto edges = gen_gnp_capped(n, n - 1, rng.next(), 1.0 + rng.below(6));
    AdjacencyGraph g(n, edges);
    const auto set = find_independent_set(g);
    CHECK(is_independent(g, set));
    CHECK(set.size() >= turan_bound(n, edges.size()));
  }
}

TEST_CASE("prime_in_range") {
  CHECK(prime_in_range(2, 4) == 3);
  CHECK(prime_in_range(24, 30) == 29);
  // n = 16: the search window is [8 * 16 * 4, 16 * 16 * 4] = [512, 1024].
  CHECK(prime_in_range(512, 1024) == 521);
  CHECK_THROWS_AS(prime_in_range(24, 28), InputError);
}

TEST_CASE("edge list round trip and validation") {
  std::stringstream ss("# comment\n0 1\n2 1\n");
  const auto edges = read_edge_list(ss);
  REQUIRE(edges.size() == 2);
  CHECK(edges[0] == Edge{0, 1});
  CHECK(edges[1] == Edge{1, 2});  // canonicalized

  CHECK_THROWS_AS(Edge::canonical(3, 3), InputError);
  CHECK_THROWS_AS(AdjacencyGraph(3, std::vector<Edge>{{0, 1}, {1, 0}}), InputError);
  CHECK_THROWS_AS(AdjacencyGraph(2, std::vector<Edge>{{0, 5}}), InputError);
  CHECK_THROWS_AS(AdjacencyGraph(3, std::vector<Edge>{{0, 1}, {0, 2}}, 1), InputError);
}
