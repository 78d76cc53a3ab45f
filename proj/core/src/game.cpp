#include "streamcolor/game.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace streamcolor {

// ----- Referee --------------------------------------------------------------

GameReferee::GameReferee(std::uint32_t n, std::uint32_t delta, std::uint64_t level_width)
    : n_(n), delta_(delta), level_width_(level_width), words_((n + 63) / 64) {
  adj_.assign(static_cast<std::size_t>(n_) * words_, 0);
  degree_.assign(n_, 0);
  level_entry_.assign(n_, 0);
}

void GameReferee::record(const Edge& e) {
  adj_[static_cast<std::size_t>(e.u) * words_ + (e.v >> 6)] |= std::uint64_t{1} << (e.v & 63);
  adj_[static_cast<std::size_t>(e.v) * words_ + (e.u >> 6)] |= std::uint64_t{1} << (e.u & 63);
  edges_.push_back(e);
  const auto bump = [&](VertexId x) {
    const std::uint32_t before = degree_[x]++;
    if (level_width_ > 0) {
      const std::uint64_t old_level = (before + level_width_ - 1) / level_width_;
      const std::uint64_t new_level = (before + level_width_) / level_width_;
      if (new_level > old_level) level_entry_[x] = edges_.size();
    }
  };
  bump(e.u);
  bump(e.v);
}

// ----- Game loop -------------------------------------------------------------

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  h ^= v;
  h *= 0x100000001b3ull;
  h ^= h >> 29;
  return h;
}

std::uint64_t digest_colors(const std::vector<ColorId>& colors) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (ColorId c : colors) h = fnv1a(h, c);
  return h;
}

// Stamp-based distinct counter reused across queries.
class DistinctCounter {
 public:
  std::uint64_t count(const std::vector<ColorId>& colors, std::uint64_t stamp) {
    std::uint64_t distinct = 0;
    for (ColorId c : colors) {
      if (c >= stamps_.size()) stamps_.resize(static_cast<std::size_t>(c) + 1, 0);
      if (stamps_[c] != stamp) {
        stamps_[c] = stamp;
        ++distinct;
      }
    }
    return distinct;
  }

 private:
  std::vector<std::uint64_t> stamps_;
};

}  // namespace

void GameTranscript::serialize(std::ostream& out) const {
  std::size_t qi = 0;
  for (const AdversaryAction& a : actions) {
    switch (a.kind) {
      case AdversaryAction::Kind::insert:
        out << "E " << a.edge.u << ' ' << a.edge.v << '\n';
        break;
      case AdversaryAction::Kind::query:
        out << "Q\n";
        if (qi < query_digests.size()) {
          out << "# q" << qi << " digest " << query_digests[qi] << ' '
              << (query_ok[qi] ? "ok" : "VIOLATION") << '\n';
        }
        ++qi;
        break;
      case AdversaryAction::Kind::stop:
        break;
    }
  }
}

GameResult run_game(StreamingColorer& colorer, Adversary& adversary, const GameRules& rules,
                    GameTranscript* transcript) {
  if (rules.n == 0 || rules.delta == 0) throw UsageError("run_game: n and Delta required");
  const std::uint64_t budget =
      rules.max_inserts ? rules.max_inserts
                        : static_cast<std::uint64_t>(rules.n) * rules.delta / 2;
  GameReferee referee(rules.n, rules.delta, colorer.level_width());
  GameResult result;
  StreamingColorer::Output last;
  bool have_output = false;
  std::uint64_t digest = 0xcbf29ce484222325ull;
  DistinctCounter distinct;
  PartialColoring pc(rules.n);

  while (true) {
    AdversaryContext ctx{referee, have_output ? &last : nullptr, referee.inserts(), budget};
    const AdversaryAction action = adversary.next(ctx);
    if (transcript) transcript->actions.push_back(action);
    if (action.kind == AdversaryAction::Kind::stop) break;

    if (action.kind == AdversaryAction::Kind::insert) {
      const Edge e = action.edge;
      if (referee.inserts() >= budget)
        throw InputError("adversary exceeded the stream length cap");
      if (e.u >= rules.n || e.v >= rules.n || e.u == e.v)
        throw InputError("adversary produced an invalid edge");
      if (referee.has_edge(e.u, e.v))
        throw InputError("adversary repeated an existing edge");
      if (referee.degree(e.u) >= rules.delta || referee.degree(e.v) >= rules.delta)
        throw InputError("adversary exceeded the degree cap");
      referee.record(e);
      colorer.process(e);
      ++result.inserts;
      result.stored_edges_peak = std::max(result.stored_edges_peak, colorer.stored_edges());
      digest = fnv1a(fnv1a(digest, e.u), e.v);
      continue;
    }

    // Query.
    ++result.queries;
    last = colorer.query();
    have_output = true;
    bool ok = true;
    std::uint64_t qdigest = 0;
    if (last.query_failed) {
      ++result.query_fails;
      ok = false;
    } else {
      pc.chi = last.colors;
      const std::vector<Edge> bad = check_proper(referee.edges(), pc);
      if (!bad.empty()) {
        ++result.violations;
        ok = false;
      }
      result.overflow_vertices += last.overflow_vertices;
      result.palette_used_max =
          std::max(result.palette_used_max, distinct.count(last.colors, result.queries));
      if (rules.audit_every_query) {
        const std::vector<std::string> failures = colorer.audit(referee);
        result.audit_failures += failures.size();
        for (const std::string& f : failures)
          if (result.audit_messages.size() < 8) result.audit_messages.push_back(f);
      }
      qdigest = digest_colors(last.colors);
    }
    digest = fnv1a(digest, qdigest);
    if (transcript) {
      transcript->query_digests.push_back(qdigest);
      transcript->query_ok.push_back(ok);
    }
  }

  const std::vector<std::string> final_failures = colorer.final_audit(referee);
  result.audit_failures += final_failures.size();
  for (const std::string& f : final_failures)
    if (result.audit_messages.size() < 8) result.audit_messages.push_back(f);
  result.peak_space_words = colorer.peak_space_words();
  result.transcript_digest = digest;
  colorer.end_of_game_stats(result.stats);
  return result;
}

// ----- Adversaries -----------------------------------------------------------

std::optional<Edge> random_legal_nonedge(Rng& rng, const GameReferee& referee) {
  std::vector<VertexId> eligible;
  for (VertexId v = 0; v < referee.n(); ++v)
    if (referee.degree(v) < referee.delta()) eligible.push_back(v);
  if (eligible.size() < 2) return std::nullopt;
  for (int attempt = 0; attempt < 20000; ++attempt) {
    const VertexId u = eligible[rng.below(eligible.size())];
    const VertexId v = eligible[rng.below(eligible.size())];
    if (u == v || referee.has_edge(u, v)) continue;
    return Edge::canonical(u, v);
  }
  // Exhaustive fallback, for nearly saturated graphs.
  for (VertexId u : eligible)
    for (VertexId v : eligible)
      if (u < v && !referee.has_edge(u, v)) return Edge::canonical(u, v);
  return std::nullopt;
}

AdversaryAction ObliviousRandomAdversary::next(const AdversaryContext& ctx) {
  if (since_query_ >= q_) {
    since_query_ = 0;
    return AdversaryAction::query();
  }
  if (ctx.inserts_used >= ctx.insert_budget) {
    // Final query before stopping, so the last insert is also answered.
    if (since_query_ > 0) {
      since_query_ = 0;
      return AdversaryAction::query();
    }
    return AdversaryAction::stop();
  }
  const std::optional<Edge> e = random_legal_nonedge(rng_, ctx.referee);
  if (!e) return AdversaryAction::stop();
  ++since_query_;
  return AdversaryAction::insert(*e);
}

AdversaryAction ConflictSeekerAdversary::next(const AdversaryContext& ctx) {
  if (since_query_ >= q_) {
    since_query_ = 0;
    return AdversaryAction::query();
  }
  if (ctx.inserts_used >= ctx.insert_budget) {
    if (since_query_ > 0) {
      since_query_ = 0;
      return AdversaryAction::query();
    }
    return AdversaryAction::stop();
  }

  const GameReferee& referee = ctx.referee;
  std::optional<Edge> pick;
  if (ctx.last_output && !ctx.last_output->query_failed) {
    const std::vector<ColorId>& colors = ctx.last_output->colors;
    // Color classes over vertices with remaining degree budget.
    eligible_.clear();
    for (VertexId v = 0; v < referee.n(); ++v)
      if (referee.degree(v) < referee.delta()) eligible_.emplace_back(colors[v], v);
    std::sort(eligible_.begin(), eligible_.end());
    classes_.clear();
    prefix_.clear();
    std::uint64_t total_pairs = 0;
    std::size_t i = 0;
    while (i < eligible_.size()) {
      std::size_t j = i;
      while (j < eligible_.size() && eligible_[j].first == eligible_[i].first) ++j;
      const std::uint64_t k = j - i;
      if (k >= 2) {
        classes_.emplace_back(i, j);
        total_pairs += k * (k - 1) / 2;
        prefix_.push_back(total_pairs);
      }
      i = j;
    }
    if (total_pairs > 0) {
      // Rejection sampling stays uniform over monochromatic non-edges. For a
      // proper output every monochromatic pair is a non-edge, so the first
      // draw almost always lands; the exact existence scan runs only when
      // repeated draws keep hitting edges.
      const auto draw = [&]() -> std::optional<Edge> {
        const std::uint64_t r = rng_.below(total_pairs);
        const std::size_t ci =
            std::lower_bound(prefix_.begin(), prefix_.end(), r + 1) - prefix_.begin();
        const auto [b, e] = classes_[ci];
        const std::uint64_t k = e - b;
        std::uint64_t x = rng_.below(k);
        std::uint64_t y = rng_.below(k - 1);
        if (y >= x) ++y;
        const VertexId u = eligible_[b + x].second;
        const VertexId v = eligible_[b + y].second;
        if (referee.has_edge(u, v)) return std::nullopt;
        return Edge::canonical(u, v);
      };
      for (int attempt = 0; attempt < 64 && !pick; ++attempt) pick = draw();
      if (!pick) {
        std::uint64_t existing = 0;
        for (const Edge& e : referee.edges())
          if (referee.degree(e.u) < referee.delta() && referee.degree(e.v) < referee.delta() &&
              colors[e.u] == colors[e.v])
            ++existing;
        if (total_pairs > existing)
          while (!pick) pick = draw();
      }
    }
  }
  if (!pick) pick = random_legal_nonedge(rng_, ctx.referee);
  if (!pick) return AdversaryAction::stop();
  ++since_query_;
  return AdversaryAction::insert(*pick);
}

// ----- Adapters --------------------------------------------------------------

RobustAdapter::RobustAdapter(const RobustConfig& config) : algo_(config, &meter_) {
  if (!config.fallback) {
    a_mirror_.resize(config.epochs);
    c_mirror_.resize(config.levels);
  }
}

void RobustAdapter::process(const Edge& e) {
  algo_.process(e);
  if (algo_.fallback_mode()) return;
  // Mirror the new memberships; a buffer reset empties the B mirror.
  if (algo_.current_epoch() != mirrored_epoch_) {
    mirrored_epoch_ = algo_.current_epoch();
    b_mirror_.clear();
  }
  b_mirror_.insert(e);
  const RobustConfig& cfg = algo_.config();
  for (std::uint32_t i = algo_.current_epoch() + 1; i <= cfg.epochs; ++i)
    if (algo_.h_value(i, e.u) == algo_.h_value(i, e.v)) a_mirror_[i - 1].insert(e);
  const std::uint32_t level =
      algo_.level_of_degree(std::max(algo_.degree(e.u), algo_.degree(e.v)));
  for (std::uint32_t i = level + 1; i <= cfg.levels; ++i)
    if (algo_.g_value(i, e.u) == algo_.g_value(i, e.v)) c_mirror_[i - 1].insert(e);
}

StreamingColorer::Output RobustAdapter::query() {
  RobustQueryResult q = algo_.query();
  Output out;
  out.colors = std::move(q.colors);
  out.overflow_vertices = q.overflow_count;
  return out;
}

std::vector<std::string> RobustAdapter::audit(const GameReferee& referee) {
  std::vector<std::string> failures;
  if (algo_.fallback_mode()) return failures;
  const RobustConfig& cfg = algo_.config();
  const std::uint32_t curr = algo_.current_epoch();
  const auto& in_a = a_mirror_[curr - 1];

  hcurr_scratch_.resize(cfg.n);
  std::vector<std::uint64_t>& hcurr = hcurr_scratch_;
  for (VertexId v = 0; v < cfg.n; ++v) hcurr[v] = algo_.h_value(curr, v);
  const auto is_fast = [&](VertexId v) { return algo_.buffer_degree(v) > cfg.fast_threshold; };

  // Coverage: slow same-block edges live in A_curr ∪ B; fast same-block
  // edges live in C_level ∪ B.
  for (const Edge& e : referee.edges()) {
    const bool fu = is_fast(e.u), fv = is_fast(e.v);
    if (!fu && !fv) {
      if (hcurr[e.u] == hcurr[e.v] && !in_a.count(e) && !b_mirror_.count(e)) {
        failures.push_back("slow coverage miss at {" + std::to_string(e.u) + "," +
                           std::to_string(e.v) + "}");
        break;
      }
    } else if (fu && fv) {
      const std::uint32_t lu = algo_.level_of_degree(algo_.degree(e.u));
      const std::uint32_t lv = algo_.level_of_degree(algo_.degree(e.v));
      if (lu == lv && algo_.g_value(lu, e.u) == algo_.g_value(lv, e.v) &&
          !c_mirror_[lu - 1].count(e) && !b_mirror_.count(e)) {
        failures.push_back("fast coverage miss at {" + std::to_string(e.u) + "," +
                           std::to_string(e.v) + "}");
        break;
      }
    }
  }

  // Orientation: inside each fast block, buffer-only edges oriented toward
  // the later level-entrant have out-degree at most the fast threshold.
  {
    std::unordered_map<std::uint64_t, std::uint32_t> outdeg;  // (level, g, vertex) key
    for (const Edge& e : algo_.buffer()) {
      const bool fu = is_fast(e.u), fv = is_fast(e.v);
      if (!fu || !fv) continue;
      const std::uint32_t lu = algo_.level_of_degree(algo_.degree(e.u));
      const std::uint32_t lv = algo_.level_of_degree(algo_.degree(e.v));
      if (lu != lv) continue;
      if (algo_.g_value(lu, e.u) != algo_.g_value(lu, e.v)) continue;
      if (c_mirror_[lu - 1].count(e)) continue;
      const VertexId from =
          referee.level_entry_time(e.v) >= referee.level_entry_time(e.u) ? e.u : e.v;
      const std::uint64_t key =
          (static_cast<std::uint64_t>(lu) * cfg.fast_range + algo_.g_value(lu, e.u)) * cfg.n +
          from;
      if (++outdeg[key] > cfg.fast_threshold) {
        failures.push_back("orientation out-degree above the fast threshold at vertex " +
                           std::to_string(from));
        break;
      }
    }
  }
  return failures;
}

void RobustAdapter::end_of_game_stats(std::map<std::string, std::int64_t>& stats) const {
  std::uint64_t max_a = 0, max_c = 0;
  for (VertexId v = 0; v < algo_.config().n; ++v) {
    max_a = std::max(max_a, algo_.sum_deg_a(v));
    max_c = std::max(max_c, algo_.sum_deg_c(v));
  }
  stats["max_sum_deg_a"] = static_cast<std::int64_t>(max_a);
  stats["max_sum_deg_c"] = static_cast<std::int64_t>(max_c);
  stats["reserved_palette"] = static_cast<std::int64_t>(algo_.reserved_colors());
  stats["fallback_mode"] = algo_.fallback_mode() ? 1 : 0;
  // Oracle-randomness model accounting: idealized table bits vs the 64-bit
  // seed actually driving the keyed evaluations.
  stats["idealized_random_bits"] = static_cast<std::int64_t>(algo_.idealized_random_bits());
  stats["seed_bits_actual"] = 64;
}

LowRandAdapter::LowRandAdapter(const LowRandConfig& config) : algo_(config, &meter_) {}

StreamingColorer::Output LowRandAdapter::query() {
  LowRandQueryResult q = algo_.query();
  Output out;
  out.query_failed = q.failed;
  out.colors = std::move(q.colors);
  return out;
}

std::vector<std::string> LowRandAdapter::audit(const GameReferee&) {
  std::vector<std::string> failures;
  const LowRandConfig& cfg = algo_.config();
  if (algo_.max_d_size_seen() > cfg.d_cap)
    failures.push_back("D set exceeded its cap");
  if (algo_.phase_write_violations() || algo_.phase_read_violations())
    failures.push_back("phase separation violated");
  return failures;
}

std::vector<std::string> LowRandAdapter::final_audit(const GameReferee&) {
  // Live D sets hold only monochromatic edges; their contents are never
  // rewritten, so one end-of-game sweep certifies every query's view.
  std::vector<std::string> failures;
  const LowRandConfig& cfg = algo_.config();
  for (std::uint32_t i = 1; i <= cfg.delta; ++i)
    for (std::uint32_t j = 1; j <= cfg.p_repeats; ++j) {
      if (!algo_.d_live(i, j)) continue;
      for (const Edge& e : algo_.d_set(i, j))
        if (algo_.hash(i, j, e.u) != algo_.hash(i, j, e.v)) {
          failures.push_back("non-monochromatic edge stored in a D set");
          return failures;
        }
    }
  return failures;
}

void LowRandAdapter::end_of_game_stats(std::map<std::string, std::int64_t>& stats) const {
  const auto audit = algo_.randomness_audit();
  stats["seed_bits"] = static_cast<std::int64_t>(audit.seed_bits);
  stats["state_words"] = static_cast<std::int64_t>(audit.state_words);
  stats["max_d_size"] = static_cast<std::int64_t>(algo_.max_d_size_seen());
  stats["color_space"] = static_cast<std::int64_t>(algo_.color_space());
}

NaiveBaseline::NaiveBaseline(std::uint32_t n, std::uint32_t delta, std::uint64_t seed,
                             std::uint64_t block_range)
    : n_(n), delta_(delta), prf_{seed} {
  range_ = block_range ? block_range
                       : static_cast<std::uint64_t>(
                             std::ceil(std::sqrt(static_cast<double>(delta_)) - 1e-9));
  if (range_ == 0) range_ = 1;
}

void NaiveBaseline::process(const Edge& e) {
  if (prf_.eval(0, e.u, range_) == prf_.eval(0, e.v, range_)) stored_.push_back(e);
}

StreamingColorer::Output NaiveBaseline::query() {
  Output out;
  out.colors.assign(n_, 0);
  std::vector<std::vector<VertexId>> block_members(range_);
  for (VertexId v = 0; v < n_; ++v)
    block_members[prf_.eval(0, v, range_)].push_back(v);
  std::vector<std::vector<VertexId>> adj(n_);
  for (const Edge& e : stored_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (std::uint64_t bl = 0; bl < range_; ++bl) {
    std::vector<ColorId> taken;
    std::vector<std::uint64_t> local(n_, 0);
    for (VertexId x : block_members[bl]) {
      taken.clear();
      for (VertexId y : adj[x])
        if (y < x) taken.push_back(static_cast<ColorId>(local[y]));
      std::sort(taken.begin(), taken.end());
      taken.erase(std::unique(taken.begin(), taken.end()), taken.end());
      std::uint64_t c = 0;
      for (ColorId t : taken) {
        if (t > c) break;
        if (t == c) ++c;
      }
      local[x] = c;
      out.colors[x] = static_cast<ColorId>(bl * (delta_ + 1) + c);
    }
  }
  return out;
}

// ----- Campaigns -------------------------------------------------------------

CampaignSummary run_campaign(const ColorerFactory& make_colorer,
                             const AdversaryFactory& make_adversary, const GameRules& rules,
                             std::uint64_t trials, std::uint64_t master_seed, unsigned threads) {
  CampaignSummary summary;
  summary.trials = trials;
  summary.games.resize(trials);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, trials == 0 ? 1 : static_cast<unsigned>(trials));

  std::atomic<std::uint64_t> next{0};
  const auto worker = [&]() {
    while (true) {
      const std::uint64_t t = next.fetch_add(1);
      if (t >= trials) return;
      const std::uint64_t algo_seed = mix64(master_seed, 2 * t);
      const std::uint64_t adv_seed = mix64(master_seed, 2 * t + 1);
      auto colorer = make_colorer(algo_seed);
      auto adversary = make_adversary(adv_seed);
      GameResult r = run_game(*colorer, *adversary, rules);
      r.algo_seed = algo_seed;
      r.adv_seed = adv_seed;
      summary.games[t] = std::move(r);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (const GameResult& g : summary.games) {
    summary.total_violations += g.violations;
    summary.total_query_fails += g.query_fails;
    summary.total_audit_failures += g.audit_failures;
    summary.total_overflow_vertices += g.overflow_vertices;
    summary.max_palette_used = std::max(summary.max_palette_used, g.palette_used_max);
    summary.max_stored_edges = std::max(summary.max_stored_edges, g.stored_edges_peak);
    summary.max_peak_space = std::max(summary.max_peak_space, g.peak_space_words);
  }
  return summary;
}

}  // namespace streamcolor
