#include "doctest.h"

#include <vector>

#include "streamcolor/hash_select.hpp"

using namespace streamcolor;

namespace {

// Synthetic conflict instance: vertex pairs, each with shared patterns given
// as per-endpoint r-intervals and a cost term.
struct SyntheticEdge {
  VertexId u, v;
  struct Pattern {
    Arc iu, iv;
    double cost;
  };
  std::vector<Pattern> patterns;
};

double brute_fn_value(const std::vector<SyntheticEdge>& edges, std::uint64_t p, std::uint64_t a,
                      std::uint64_t b) {
  double total = 0.0;
  for (const SyntheticEdge& e : edges) {
    const std::uint64_t ru = (a * e.u + b) % p;
    const std::uint64_t rv = (a * e.v + b) % p;
    for (const auto& pat : e.patterns) {
      const bool hit_u = (ru + p - pat.iu.start % p) % p < pat.iu.len;
      const bool hit_v = (rv + p - pat.iv.start % p) % p < pat.iv.len;
      if (hit_u && hit_v) total += pat.cost;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("selector part sums and chosen function match brute force") {
  for (std::uint64_t p : {5ull, 13ull, 29ull}) {
    Rng rng(p * 77);
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<SyntheticEdge> edges;
      const int m = 1 + static_cast<int>(rng.below(6));
      for (int i = 0; i < m; ++i) {
        SyntheticEdge e;
        e.u = static_cast<VertexId>(rng.below(p));
        do {
          e.v = static_cast<VertexId>(rng.below(p));
        } while (e.v == e.u);
        const int pats = 1 + static_cast<int>(rng.below(3));
        for (int j = 0; j < pats; ++j) {
          SyntheticEdge::Pattern pat;
          pat.iu = Arc{rng.below(p), 1 + rng.below(p - 1)};
          pat.iv = Arc{rng.below(p), 1 + rng.below(p - 1)};
          pat.cost = 0.5 * (1 + rng.below(6));
          e.patterns.push_back(pat);
        }
        edges.push_back(e);
      }

      const auto enumerate = [&](HashSelector::Sink& sink) {
        for (const SyntheticEdge& e : edges) {
          sink.begin_edge(e.u, e.v);
          for (const auto& pat : e.patterns) sink.add(pat.iu, pat.iv, pat.cost);
        }
      };

      HashSelector selector(p, nullptr);
      const auto parts = selector.part_sums_for_test(enumerate);
      REQUIRE(parts.size() == p);
      for (std::uint64_t a = 0; a < p; ++a) {
        double expect = 0.0;
        for (std::uint64_t b = 0; b < p; ++b) expect += brute_fn_value(edges, p, a, b);
        CHECK(parts[a] == doctest::Approx(expect).epsilon(1e-9));
      }

      const auto res = selector.select(enumerate);
      // The chosen function's value matches brute force, and no function in
      // the chosen part beats it.
      CHECK(res.fn_value ==
            doctest::Approx(brute_fn_value(edges, p, res.fn.a, res.fn.b)).epsilon(1e-9));
      for (std::uint64_t b = 0; b < p; ++b)
        CHECK(res.fn_value <= brute_fn_value(edges, p, res.fn.a, b) + 1e-9);
      // Selected part minimizes the part sums.
      for (std::uint64_t a = 0; a < p; ++a) CHECK(parts[res.fn.a] <= parts[a] + 1e-9);
    }
  }
}

TEST_CASE("empty conflict set selects the lowest-indexed function") {
  HashSelector selector(7, nullptr);
  const auto res = selector.select([](HashSelector::Sink&) {});
  CHECK(res.fn.a == 0);
  CHECK(res.fn.b == 0);
  CHECK(res.fn_value == 0.0);
}
