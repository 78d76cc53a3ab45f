#include <benchmark/benchmark.h>

#include "streamcolor/generate.hpp"
#include "streamcolor/graph.hpp"
#include "streamcolor/hashing.hpp"

using namespace streamcolor;

static void BM_GreedyColor(benchmark::State& state) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  const auto edges = gen_gnp_capped(n, 32, 7, 16.0);
  AdjacencyGraph g(n, edges);
  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) order[v] = v;
  for (auto _ : state) {
    auto c = greedy_color(g, order);
    benchmark::DoNotOptimize(c.chi.data());
  }
  state.SetItemsProcessed(state.iterations() * edges.size());
}
BENCHMARK(BM_GreedyColor)->Range(256, 4096);

static void BM_DegeneracyPeel(benchmark::State& state) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  const auto edges = gen_gnp_capped(n, 32, 7, 16.0);
  AdjacencyGraph g(n, edges);
  for (auto _ : state) {
    auto r = degeneracy_peel(g);
    benchmark::DoNotOptimize(r.ordering.data());
  }
}
BENCHMARK(BM_DegeneracyPeel)->Range(256, 4096);

static void BM_FindIndependentSet(benchmark::State& state) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  // Sparse conflict graphs, the shape the epoch commit step sees.
  const auto edges = gen_gnp_capped(n, 8, 11, 1.0);
  AdjacencyGraph g(n, edges);
  for (auto _ : state) {
    auto set = find_independent_set(g);
    benchmark::DoNotOptimize(set.data());
  }
}
BENCHMARK(BM_FindIndependentSet)->Range(256, 2048);

static void BM_Gf2Mul(benchmark::State& state) {
  const Gf2Field& field = Gf2Field::get(static_cast<std::uint32_t>(state.range(0)));
  Rng rng(3);
  const std::uint64_t mask = (std::uint64_t{1} << field.width()) - 1;
  std::uint64_t a = rng.next() & mask, b = (rng.next() & mask) | 1;
  for (auto _ : state) {
    a = field.mul(a, b) | 1;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_Gf2Mul)->Arg(10)->Arg(16);

static void BM_FourIndepEval(benchmark::State& state) {
  const Gf2Field& field = Gf2Field::get(10);
  Rng rng(5);
  const FourIndepHash h = FourIndepHash::sample(rng, field, 8);
  std::uint64_t x = 1;
  for (auto _ : state) {
    x = (h.eval(x) + 1) & 1023;
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_FourIndepEval);

BENCHMARK_MAIN();
