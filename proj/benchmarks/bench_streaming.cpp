#include <benchmark/benchmark.h>

#include "streamcolor/determ.hpp"
#include "streamcolor/game.hpp"
#include "streamcolor/generate.hpp"
#include "streamcolor/lowrand.hpp"
#include "streamcolor/robust.hpp"

using namespace streamcolor;

static void BM_DetermRun(benchmark::State& state) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  const std::uint32_t delta = 32;
  const auto edges = gen_gnp_capped(n, delta, 13, 8.0);
  for (auto _ : state) {
    MultiPassSource src = MultiPassSource::from_edges(edges);
    DetermOptions opt;
    opt.n = n;
    opt.delta = delta;
    auto res = DetermColoring::run(src, opt);
    benchmark::DoNotOptimize(res.coloring.chi.data());
  }
  state.SetItemsProcessed(state.iterations() * edges.size());
}
BENCHMARK(BM_DetermRun)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_RobustProcess(benchmark::State& state) {
  const std::uint32_t n = 256, delta = 64;
  const auto edges = gen_gnp_capped(n, delta, 17, 32.0);
  for (auto _ : state) {
    RobustColoring algo(RobustConfig::make(n, delta, 0.0, 23));
    for (const Edge& e : edges) algo.process(e);
    benchmark::DoNotOptimize(algo.stored_edges());
  }
  state.SetItemsProcessed(state.iterations() * edges.size());
}
BENCHMARK(BM_RobustProcess)->Unit(benchmark::kMillisecond);

static void BM_RobustQuery(benchmark::State& state) {
  const std::uint32_t n = 256, delta = 64;
  const auto edges = gen_gnp_capped(n, delta, 17, 32.0);
  RobustColoring algo(RobustConfig::make(n, delta, 0.0, 23));
  for (const Edge& e : edges) algo.process(e);
  for (auto _ : state) {
    auto q = algo.query();
    benchmark::DoNotOptimize(q.colors.data());
  }
}
BENCHMARK(BM_RobustQuery)->Unit(benchmark::kMicrosecond);

static void BM_LowRandProcess(benchmark::State& state) {
  const std::uint32_t n = 1024, delta = 16;
  const auto edges = gen_gnp_capped(n, delta, 19, 8.0);
  for (auto _ : state) {
    LowRandColoring algo(LowRandConfig::make(n, delta, 29));
    for (const Edge& e : edges) algo.process(e);
    benchmark::DoNotOptimize(algo.stored_edges());
  }
  state.SetItemsProcessed(state.iterations() * edges.size());
}
BENCHMARK(BM_LowRandProcess)->Unit(benchmark::kMillisecond);

static void BM_ConflictSeekerGame(benchmark::State& state) {
  for (auto _ : state) {
    RobustAdapter colorer(RobustConfig::make(128, 36, 0.0, 31));
    ConflictSeekerAdversary adv(37, 4);
    GameRules rules;
    rules.n = 128;
    rules.delta = 36;
    rules.audit_every_query = false;
    auto res = run_game(colorer, adv, rules);
    benchmark::DoNotOptimize(res.inserts);
  }
}
BENCHMARK(BM_ConflictSeekerGame)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
