#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "streamcolor/graph.hpp"
#include "streamcolor/lowrand.hpp"
#include "streamcolor/robust.hpp"
#include "streamcolor/stream.hpp"

namespace streamcolor {

// ----- Game protocol -------------------------------------------------------

struct AdversaryAction {
  enum class Kind : std::uint8_t { insert, query, stop };
  Kind kind = Kind::stop;
  Edge edge{0, 0};

  static AdversaryAction insert(Edge e) { return {Kind::insert, e}; }
  static AdversaryAction query() { return {Kind::query, Edge{0, 0}}; }
  static AdversaryAction stop() { return {Kind::stop, Edge{0, 0}}; }
};

// The referee keeps the exact inserted graph; its memory is not charged to
// any algorithm. Level entry times support the orientation audit.
class GameReferee {
 public:
  GameReferee(std::uint32_t n, std::uint32_t delta, std::uint64_t level_width);

  void record(const Edge& e);
  bool has_edge(VertexId u, VertexId v) const {
    return (adj_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1;
  }
  std::uint32_t degree(VertexId v) const { return degree_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::uint64_t inserts() const { return edges_.size(); }
  std::uint32_t n() const { return n_; }
  std::uint32_t delta() const { return delta_; }
  std::uint64_t level_entry_time(VertexId v) const { return level_entry_[v]; }

 private:
  std::uint32_t n_, delta_;
  std::uint64_t level_width_;
  std::size_t words_;
  std::vector<std::uint64_t> adj_;
  std::vector<std::uint32_t> degree_;
  std::vector<std::uint64_t> level_entry_;
  std::vector<Edge> edges_;
};

// Streaming algorithm under test: process/query plus audit hooks.
class StreamingColorer {
 public:
  struct Output {
    bool query_failed = false;
    std::uint64_t overflow_vertices = 0;
    std::vector<ColorId> colors;
  };

  virtual ~StreamingColorer() = default;
  virtual std::string name() const = 0;
  virtual void process(const Edge& e) = 0;
  virtual Output query() = 0;
  virtual std::uint64_t stored_edges() const = 0;
  virtual std::uint64_t reserved_palette() const = 0;
  virtual std::uint64_t peak_space_words() const { return 0; }
  // Deterministic internal invariants, checked against the replayed truth
  // after every query; static-state invariants may defer to final_audit.
  virtual std::vector<std::string> audit(const GameReferee&) { return {}; }
  virtual std::vector<std::string> final_audit(const GameReferee&) { return {}; }
  virtual void end_of_game_stats(std::map<std::string, std::int64_t>&) const {}
  // Fast-zone level width for the referee's entry-time tracking (0 = none).
  virtual std::uint64_t level_width() const { return 0; }
};

struct AdversaryContext {
  const GameReferee& referee;  // the adversary's own inserts, mirrored
  const StreamingColorer::Output* last_output = nullptr;
  std::uint64_t inserts_used = 0;
  std::uint64_t insert_budget = 0;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  virtual AdversaryAction next(const AdversaryContext& ctx) = 0;
};

// ----- Results -------------------------------------------------------------

struct GameResult {
  std::uint64_t algo_seed = 0;
  std::uint64_t adv_seed = 0;
  std::uint64_t inserts = 0;
  std::uint64_t queries = 0;
  std::uint64_t violations = 0;
  std::uint64_t query_fails = 0;
  std::uint64_t overflow_vertices = 0;
  std::uint64_t palette_used_max = 0;
  std::uint64_t stored_edges_peak = 0;
  std::uint64_t peak_space_words = 0;
  std::uint64_t audit_failures = 0;
  std::uint64_t transcript_digest = 0;
  std::vector<std::string> audit_messages;  // first few, for diagnostics
  std::map<std::string, std::int64_t> stats;
};

struct GameRules {
  std::uint32_t n = 0;
  std::uint32_t delta = 0;
  std::uint64_t max_inserts = 0;  // defaults to n * delta / 2
  bool record_transcript = false;
  bool audit_every_query = true;
};

struct GameTranscript {
  std::vector<AdversaryAction> actions;
  std::vector<std::uint64_t> query_digests;
  std::vector<bool> query_ok;

  void serialize(std::ostream& out) const;
};

GameResult run_game(StreamingColorer& colorer, Adversary& adversary, const GameRules& rules,
                    GameTranscript* transcript = nullptr);

// ----- Adversaries ---------------------------------------------------------

class StopAdversary final : public Adversary {
 public:
  std::string name() const override { return "stop"; }
  AdversaryAction next(const AdversaryContext&) override { return AdversaryAction::stop(); }
};

// Inserts uniformly random legal non-edges; queries every q inserts.
class ObliviousRandomAdversary final : public Adversary {
 public:
  ObliviousRandomAdversary(std::uint64_t seed, std::uint64_t q) : rng_(seed), q_(q) {}
  std::string name() const override { return "oblivious-random"; }
  AdversaryAction next(const AdversaryContext& ctx) override;

 private:
  Rng rng_;
  std::uint64_t q_;
  std::uint64_t since_query_ = 0;
};

// Adaptive: inserts a uniformly random monochromatic (equal colors in the
// last output) non-edge with both degrees under the cap, falling back to a
// random legal non-edge when none exists. Queries every q inserts.
class ConflictSeekerAdversary final : public Adversary {
 public:
  ConflictSeekerAdversary(std::uint64_t seed, std::uint64_t q) : rng_(seed), q_(q) {}
  std::string name() const override { return "conflict-seeker"; }
  AdversaryAction next(const AdversaryContext& ctx) override;

 private:
  Rng rng_;
  std::uint64_t q_;
  std::uint64_t since_query_ = 0;
  // Scratch reused across inserts.
  std::vector<std::pair<ColorId, VertexId>> eligible_;
  std::vector<std::pair<std::size_t, std::size_t>> classes_;
  std::vector<std::uint64_t> prefix_;
};

// Uniformly random legal non-edge, or nullopt when none exists.
std::optional<Edge> random_legal_nonedge(Rng& rng, const GameReferee& referee);

// ----- Algorithm adapters --------------------------------------------------

class RobustAdapter final : public StreamingColorer {
 public:
  RobustAdapter(const RobustConfig& config);
  std::string name() const override { return "robust"; }
  void process(const Edge& e) override;
  Output query() override;
  std::uint64_t stored_edges() const override { return algo_.stored_edges(); }
  std::uint64_t reserved_palette() const override { return algo_.reserved_colors(); }
  std::uint64_t peak_space_words() const override { return meter_.peak_words(); }
  std::vector<std::string> audit(const GameReferee& referee) override;
  void end_of_game_stats(std::map<std::string, std::int64_t>& stats) const override;
  std::uint64_t level_width() const override { return algo_.config().fast_threshold; }
  const RobustColoring& algo() const { return algo_; }

 private:
  SpaceMeter meter_;
  RobustColoring algo_;
  // Incremental membership mirrors so the per-query coverage scan is O(m)
  // with O(1) lookups. The referee pays for these, not the algorithm.
  std::uint32_t mirrored_epoch_ = 1;
  std::unordered_set<Edge, EdgeHash> b_mirror_;
  std::vector<std::unordered_set<Edge, EdgeHash>> a_mirror_;
  std::vector<std::unordered_set<Edge, EdgeHash>> c_mirror_;
  std::vector<std::uint64_t> hcurr_scratch_;
};

class LowRandAdapter final : public StreamingColorer {
 public:
  LowRandAdapter(const LowRandConfig& config);
  std::string name() const override { return "lowrand"; }
  void process(const Edge& e) override { algo_.process(e); }
  Output query() override;
  std::uint64_t stored_edges() const override { return algo_.stored_edges(); }
  std::uint64_t reserved_palette() const override { return algo_.color_space(); }
  std::uint64_t peak_space_words() const override { return meter_.peak_words_excluding_cache(); }
  std::vector<std::string> audit(const GameReferee& referee) override;
  std::vector<std::string> final_audit(const GameReferee& referee) override;
  void end_of_game_stats(std::map<std::string, std::int64_t>& stats) const override;
  const LowRandColoring& algo() const { return algo_; }

 private:
  SpaceMeter meter_;
  LowRandColoring algo_;
};

// Non-robust foil: one fixed random block function whose blocks the outputs
// reveal; stores every monochromatic edge forever. Correct on oblivious
// streams, but an adaptive adversary can drive its storage unboundedly.
class NaiveBaseline final : public StreamingColorer {
 public:
  NaiveBaseline(std::uint32_t n, std::uint32_t delta, std::uint64_t seed,
                std::uint64_t block_range = 0);  // 0: ceil(sqrt(delta))
  std::string name() const override { return "naive-baseline"; }
  void process(const Edge& e) override;
  Output query() override;
  std::uint64_t stored_edges() const override { return stored_.size(); }
  std::uint64_t reserved_palette() const override { return range_ * (delta_ + 1); }

 private:
  std::uint32_t n_, delta_;
  std::uint64_t range_;
  KeyedPrf prf_;
  std::vector<Edge> stored_;
};

// ----- Campaigns -----------------------------------------------------------

using ColorerFactory = std::function<std::unique_ptr<StreamingColorer>(std::uint64_t seed)>;
using AdversaryFactory = std::function<std::unique_ptr<Adversary>(std::uint64_t seed)>;

struct CampaignSummary {
  std::uint64_t trials = 0;
  std::uint64_t total_violations = 0;
  std::uint64_t total_query_fails = 0;
  std::uint64_t total_audit_failures = 0;
  std::uint64_t total_overflow_vertices = 0;
  std::uint64_t max_palette_used = 0;
  std::uint64_t max_stored_edges = 0;
  std::uint64_t max_peak_space = 0;
  std::vector<GameResult> games;
};

CampaignSummary run_campaign(const ColorerFactory& make_colorer,
                             const AdversaryFactory& make_adversary, const GameRules& rules,
                             std::uint64_t trials, std::uint64_t master_seed,
                             unsigned threads = 0);

}  // namespace streamcolor
