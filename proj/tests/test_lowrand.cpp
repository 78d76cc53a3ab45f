#include "doctest.h"

#include <set>

#include "streamcolor/generate.hpp"
#include "streamcolor/lowrand.hpp"

using namespace streamcolor;

TEST_CASE("config closed forms") {
  {
    const LowRandConfig c = LowRandConfig::make(1024, 16, 1);
    CHECK(c.p_repeats == 100);
    CHECK(c.ell == 16);
    CHECK(c.out_bits == 8);
    CHECK(c.field_width == 10);
    CHECK(c.d_cap == 7 * 1024 / 16 + 1);
  }
  {
    // Delta = 5: ell = 4, output space 6 * 16 = 96.
    const LowRandConfig c = LowRandConfig::make(64, 5, 1);
    CHECK(c.ell == 4);
    LowRandColoring algo(c);
    CHECK(algo.color_space() == 96);
  }
  {
    // Delta = 2: ell = 2, range 4, field width log2(n).
    const LowRandConfig c = LowRandConfig::make(256, 2, 1);
    CHECK(c.ell == 2);
    CHECK(c.out_bits == 2);
    CHECK(c.field_width == 8);
  }
}

TEST_CASE("randomness audit counts exactly the seed bits") {
  const LowRandConfig c = LowRandConfig::make(1024, 16, 99);
  LowRandColoring algo(c);
  const auto audit = algo.randomness_audit();
  CHECK(audit.seed_bits == 16ull * 100 * 4 * 10);  // Delta * P * 4w = 64000
  CHECK(audit.seed_bits == 64000);
}

TEST_CASE("empty graph query: first repeat chosen, flattened pair output") {
  const LowRandConfig c = LowRandConfig::make(64, 4, 5);
  LowRandColoring algo(c);
  const LowRandQueryResult q = algo.query();
  REQUIRE(!q.failed);
  CHECK(q.chosen_j == 1);
  const std::uint64_t range = c.ell * c.ell;
  for (VertexId v = 0; v < 64; ++v) {
    CHECK(q.chi[v] == 0);
    CHECK(q.colors[v] == algo.hash(1, 1, v));
    CHECK(q.colors[v] < range);
  }
}

TEST_CASE("non-monochromatic edges only touch the buffer") {
  const LowRandConfig c = LowRandConfig::make(64, 4, 5);
  LowRandColoring algo(c);
  // Find an edge that no h_{i,j} maps monochromatically (likely quickly).
  for (VertexId v = 1; v < 64; ++v) {
    bool mono = false;
    for (std::uint32_t i = 2; i <= c.delta && !mono; ++i)
      for (std::uint32_t j = 1; j <= c.p_repeats && !mono; ++j)
        if (algo.hash(i, j, 0) == algo.hash(i, j, v)) mono = true;
    if (!mono) {
      algo.process(Edge{0, v});
      CHECK(algo.stored_edges() == 1);  // buffer only
      return;
    }
  }
  WARN("no fully non-monochromatic edge found for this seed");
}

TEST_CASE("D sets cap and invalidation") {
  // Tiny cap: n=8, Delta=4 -> strict cap 7*8/4 = 14 edges per set.
  const LowRandConfig c = LowRandConfig::make(8, 4, 11);
  LowRandColoring algo(c);
  CHECK(c.d_cap == 15);
  // Feed every edge of K8 minus enough to respect degree caps: use a 4-regular
  // circulant instead.
  std::vector<Edge> edges;
  for (VertexId v = 0; v < 8; ++v) {
    edges.push_back(Edge::canonical(v, (v + 1) % 8));
    edges.push_back(Edge::canonical(v, (v + 2) % 8));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const Edge& e : edges) algo.process(e);
  CHECK(algo.max_d_size_seen() <= c.d_cap);
  const LowRandQueryResult q = algo.query();
  if (!q.failed) {
    PartialColoring pc(8);
    pc.chi = q.colors;
    CHECK(check_proper(edges, pc).empty());
  }
}

TEST_CASE("queries stay proper across epochs on a random stream") {
  Rng rng(2718);
  const std::uint32_t n = 128;
  const std::uint32_t delta = 10;
  const LowRandConfig c = LowRandConfig::make(n, delta, rng.next());
  LowRandColoring algo(c);
  const auto edges = gen_gnp_capped(n, delta, rng.next(), 6.0);
  std::vector<Edge> seen;
  std::uint64_t fails = 0;
  for (const Edge& e : edges) {
    algo.process(e);
    seen.push_back(e);
    if (seen.size() % 29 == 0 || seen.size() == edges.size()) {
      const LowRandQueryResult q = algo.query();
      if (q.failed) {
        ++fails;
        continue;
      }
      PartialColoring pc(n);
      pc.chi = q.colors;
      CHECK(check_proper(seen, pc).empty());
      // First coordinate within Delta+1, second within ell^2.
      for (VertexId v = 0; v < n; ++v) {
        CHECK(q.chi[v] <= delta);
        CHECK(q.colors[v] < algo.color_space());
      }
    }
  }
  CHECK(fails == 0);
  CHECK(algo.max_d_size_seen() <= c.d_cap);
}

TEST_CASE("degree cap enforcement") {
  const LowRandConfig c = LowRandConfig::make(16, 2, 3);
  LowRandColoring algo(c);
  algo.process(Edge{0, 1});
  algo.process(Edge{0, 2});
  CHECK_THROWS_AS(algo.process(Edge{0, 3}), InputError);
}
