#include "doctest.h"

#include <sstream>

#include "streamcolor/game.hpp"

using namespace streamcolor;

namespace {

GameRules rules_for(std::uint32_t n, std::uint32_t delta) {
  GameRules r;
  r.n = n;
  r.delta = delta;
  return r;
}

}  // namespace

TEST_CASE("stop adversary yields an empty game") {
  RobustAdapter colorer(RobustConfig::make(64, 36, 0.0, 1));
  StopAdversary adv;
  const GameResult res = run_game(colorer, adv, rules_for(64, 36));
  CHECK(res.inserts == 0);
  CHECK(res.queries == 0);
  CHECK(res.violations == 0);
}

TEST_CASE("oblivious adversary vs robust: clean short campaign") {
  const GameRules rules = rules_for(64, 36);
  const CampaignSummary summary = run_campaign(
      [&](std::uint64_t seed) {
        return std::make_unique<RobustAdapter>(RobustConfig::make(64, 36, 0.0, seed));
      },
      [&](std::uint64_t seed) { return std::make_unique<ObliviousRandomAdversary>(seed, 4); },
      rules, 6, 515, 2);
  CHECK(summary.total_violations == 0);
  CHECK(summary.total_query_fails == 0);
  CHECK(summary.total_audit_failures == 0);
  // Near saturation the adversary may strand a few leftover degree slots.
  for (const GameResult& g : summary.games) CHECK(g.inserts >= 64 * 36 / 2 - 64);
}

TEST_CASE("conflict seeker vs robust: proper at every query") {
  const GameRules rules = rules_for(64, 36);
  RobustAdapter colorer(RobustConfig::make(64, 36, 0.0, 99));
  ConflictSeekerAdversary adv(7, 1);
  const GameResult res = run_game(colorer, adv, rules);
  CHECK(res.violations == 0);
  CHECK(res.audit_failures == 0);
  CHECK(res.queries >= res.inserts);  // query cadence 1
  CHECK(res.stats.at("fallback_mode") == 0);
}

TEST_CASE("conflict seeker vs lowrand: proper, no query fails at desk scale") {
  const GameRules rules = rules_for(128, 10);
  LowRandAdapter colorer(LowRandConfig::make(128, 10, 4242));
  ConflictSeekerAdversary adv(11, 2);
  const GameResult res = run_game(colorer, adv, rules);
  CHECK(res.violations == 0);
  CHECK(res.query_fails == 0);
  CHECK(res.audit_failures == 0);
  CHECK(res.stats.at("seed_bits") > 0);
}

TEST_CASE("naive baseline: correct obliviously, storage blows up adaptively") {
  const std::uint32_t n = 128;
  const std::uint32_t delta = 32;
  const GameRules rules = rules_for(n, delta);
  // Oblivious stream: storage stays near m / range.
  {
    NaiveBaseline base(n, delta, 77);
    ObliviousRandomAdversary adv(13, 4);
    const GameResult res = run_game(base, adv, rules);
    CHECK(res.violations == 0);
    // range = ceil(sqrt(32)) = 6: stored ~= m/6, allow generous slack.
    CHECK(res.stored_edges_peak < res.inserts / 2);
  }
  // Adaptive attack: storage exceeds 5n well before the cap.
  {
    NaiveBaseline base(n, delta, 77);
    ConflictSeekerAdversary adv(13, 1);
    const GameResult res = run_game(base, adv, rules);
    CHECK(res.violations == 0);  // the baseline stays proper; it leaks space
    CHECK(res.stored_edges_peak >= 5 * n);
  }
}

TEST_CASE("verification flags a corrupted output") {
  // A colorer that mirrors a proper coloring but corrupts one vertex.
  class Corrupted final : public StreamingColorer {
   public:
    explicit Corrupted(std::uint32_t n) : n_(n) {}
    std::string name() const override { return "corrupted"; }
    void process(const Edge& e) override { last_ = e; }
    Output query() override {
      Output out;
      out.colors.assign(n_, 0);
      for (VertexId v = 0; v < n_; ++v) out.colors[v] = v;
      out.colors[last_.u] = out.colors[last_.v];  // deliberate conflict
      return out;
    }
    std::uint64_t stored_edges() const override { return 0; }
    std::uint64_t reserved_palette() const override { return n_; }

   private:
    std::uint32_t n_;
    Edge last_{0, 1};
  };
  Corrupted colorer(16);
  ConflictSeekerAdversary adv(3, 1);
  const GameResult res = run_game(colorer, adv, rules_for(16, 4));
  CHECK(res.violations > 0);
}

TEST_CASE("adversary cap violations disqualify the adversary") {
  class Reckless final : public Adversary {
   public:
    std::string name() const override { return "reckless"; }
    AdversaryAction next(const AdversaryContext& ctx) override {
      // Keeps inserting the same star beyond the degree cap.
      return AdversaryAction::insert(
          Edge::canonical(0, 1 + static_cast<VertexId>(count_++ % (ctx.referee.n() - 1))));
    }

   private:
    std::uint64_t count_ = 0;
  };
  RobustAdapter colorer(RobustConfig::make(16, 4, 0.0, 5));
  Reckless adv;
  CHECK_THROWS_AS(run_game(colorer, adv, rules_for(16, 4)), InputError);
}

TEST_CASE("identical seeds reproduce identical transcripts") {
  const GameRules rules = [] {
    GameRules r;
    r.n = 64;
    r.delta = 16;
    r.record_transcript = true;
    return r;
  }();
  const auto play = [&](std::uint64_t seed) {
    RobustAdapter colorer(RobustConfig::make(64, 16, 0.0, seed));
    ConflictSeekerAdversary adv(seed ^ 0xabc, 2);
    GameTranscript t;
    const GameResult res = run_game(colorer, adv, rules, &t);
    std::stringstream ss;
    t.serialize(ss);
    return std::pair{res.transcript_digest, ss.str()};
  };
  const auto [d1, s1] = play(321);
  const auto [d2, s2] = play(321);
  const auto [d3, s3] = play(322);
  CHECK(d1 == d2);
  CHECK(s1 == s2);
  CHECK(d1 != d3);
}
