#include "doctest.h"

#include <cmath>
#include <vector>

#include "streamcolor/graph.hpp"
#include "streamcolor/gw_sampler.hpp"

using namespace streamcolor;

TEST_CASE("toy sampler: p=8, equal weights, unit inflation") {
  GwSampler gw = GwSampler::build(8, 1, 1.0);
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> slacks = {{0, 1}, {1, 1}};
  gw.fill_slot(0, slacks);
  for (std::uint64_t r = 0; r < 4; ++r) CHECK(gw.pattern_of(0, r) == 0);
  for (std::uint64_t r = 4; r < 8; ++r) CHECK(gw.pattern_of(0, r) == 1);
  CHECK(gw.interval_of(0, 0).len == 4);
  CHECK(gw.interval_of(0, 1).len == 4);
}

TEST_CASE("zero-weight patterns receive no mass") {
  GwSampler gw = GwSampler::build(8, 1, 1.0);
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> slacks = {{0, 3}, {1, 0}};
  gw.fill_slot(0, slacks);
  for (std::uint64_t r = 0; r < 8; ++r) CHECK(gw.pattern_of(0, r) == 0);
  CHECK(gw.interval_of(0, 1).len == 0);
}

TEST_CASE("coverage and the per-pattern bound at the production prime scale") {
  // n = 64: prime from [8 * 64 * 6, 16 * 64 * 6]; nonzero weights >= 1/n
  // guarantee full coverage.
  const std::uint32_t n = 64;
  const std::uint64_t p = prime_in_range(8 * 64 * 6, 16 * 64 * 6);
  const double inflation = 1.0 + 1.0 / (8.0 * 6.0);
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint32_t patterns = 2 + static_cast<std::uint32_t>(rng.below(15));
    std::vector<std::pair<std::uint64_t, std::uint64_t>> slacks;
    std::uint64_t total = 0;
    for (std::uint32_t j = 0; j < patterns; ++j) {
      // slack values <= n with some zeros mixed in
      const std::uint64_t s = rng.chance(0.3) ? 0 : 1 + rng.below(n);
      slacks.emplace_back(j, s);
      total += s;
    }
    if (total == 0) slacks[0].second = total = 1;
    GwSampler gw = GwSampler::build(p, 1, inflation);
    gw.fill_slot(0, slacks);
    // Full coverage: every r maps to some positive-weight pattern.
    for (std::uint64_t probe = 0; probe < 64; ++probe) {
      const std::uint64_t r = rng.below(p);
      const std::uint64_t j = gw.pattern_of(0, r);
      CHECK(slacks[j].second > 0);
    }
    // Per-pattern mass bound |g^{-1}(x,j)| / p <= w_j * inflation.
    std::uint64_t covered = 0;
    for (const auto& entry : gw.entries(0)) {
      const double w =
          static_cast<double>(slacks[entry.pattern].second) / static_cast<double>(total);
      const double mass = static_cast<double>(entry.end - entry.begin) / static_cast<double>(p);
      CHECK(mass <= w * inflation + 1e-12);
      covered += entry.end - entry.begin;
    }
    CHECK(covered == p);
  }
}

TEST_CASE("coverage shortfall is a hard failure") {
  // Tiny p with unit inflation and skewed weights cannot cover.
  GwSampler gw = GwSampler::build(3, 1, 1.0);
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> slacks = {{0, 1}, {1, 1}, {2, 1}};
  // floor(3 * 1/3) = 1 each: covers exactly. Use weights that floor to 0.
  GwSampler gw2 = GwSampler::build(3, 1, 1.0);
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> skewed = {
      {0, 1}, {1, 1}, {2, 1}, {3, 1}};
  CHECK_THROWS_AS(gw2.fill_slot(0, skewed), TheoryViolation);
  (void)gw;
}

TEST_CASE("all-zero slack vector is rejected") {
  GwSampler gw = GwSampler::build(8, 1, 1.0);
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> zero = {{0, 0}, {1, 0}};
  CHECK_THROWS_AS(gw.fill_slot(0, zero), TheoryViolation);
}
