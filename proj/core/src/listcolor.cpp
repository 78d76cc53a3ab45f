#include "streamcolor/listcolor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "streamcolor/gw_sampler.hpp"
#include "streamcolor/hash_select.hpp"

namespace streamcolor {

std::int64_t partition_cost(std::uint64_t a, std::uint64_t b, std::uint64_t p, std::uint64_t s,
                            std::span<const ColorId> colors) {
  if (colors.empty()) return 0;
  std::vector<std::uint64_t> parts;
  parts.reserve(colors.size());
  for (ColorId c : colors) parts.push_back(((a * c + b) % p) % s);
  std::sort(parts.begin(), parts.end());
  std::int64_t best = 0;
  std::int64_t run = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    run = (i > 0 && parts[i] == parts[i - 1]) ? run + 1 : 1;
    best = std::max(best, run - 1);
  }
  return best;
}

namespace {

constexpr std::uint32_t kNoSlot = 0xffffffffu;

// Exact integer sums of the partition excess over windows of the family.
// For a fixed multiplier a, the b-sweep tracks the multiset of normalized
// part classes; each color changes class at most once as b grows, so the
// max-multiplicity is piecewise constant between |S| event positions.
class PartitionSweeper {
 public:
  PartitionSweeper(std::uint64_t p, std::uint64_t s, std::size_t max_colors)
      : p_(p), s_(s), q_(p % s), cnt_(s, 0), coc_(max_colors + 2, 0) {}

  std::int64_t window_sum(std::span<const ColorId> colors, std::uint64_t a, std::uint64_t b0,
                          std::uint64_t b1) {
    if (colors.empty() || b0 >= b1) return 0;
    reset();
    events_.clear();
    for (ColorId c : colors) {
      const std::uint64_t u = (a * c) % p_;
      const std::uint32_t from = static_cast<std::uint32_t>(u % s_);
      bump(from, +1);
      if (u > 0 && q_ % s_ != 0) {
        const std::uint32_t to = static_cast<std::uint32_t>((from + s_ - (q_ % s_)) % s_);
        if (to != from) events_.push_back({p_ - u, from, to});
      }
    }
    std::sort(events_.begin(), events_.end(),
              [](const Event& x, const Event& y) { return x.pos < y.pos; });
    std::size_t idx = 0;
    while (idx < events_.size() && events_[idx].pos <= b0) apply(events_[idx++]);
    std::int64_t total = 0;
    std::uint64_t cur = b0;
    while (cur < b1) {
      std::uint64_t next = b1;
      if (idx < events_.size() && events_[idx].pos < b1) next = events_[idx].pos;
      total += static_cast<std::int64_t>(next - cur) * (curmax_ - 1);
      cur = next;
      while (idx < events_.size() && events_[idx].pos == cur) apply(events_[idx++]);
    }
    return total;
  }

 private:
  struct Event {
    std::uint64_t pos;
    std::uint32_t from, to;
  };

  void reset() {
    for (std::uint32_t t : touched_) cnt_[t] = 0;
    touched_.clear();
    std::fill(coc_.begin(), coc_.end(), 0);
    curmax_ = 0;
  }

  void bump(std::uint32_t cls, int dir) {
    if (cnt_[cls] == 0 && dir > 0) touched_.push_back(cls);
    if (dir > 0) {
      ++cnt_[cls];
      ++coc_[cnt_[cls]];
      if (cnt_[cls] > 0) --coc_[cnt_[cls] - 1];
      curmax_ = std::max(curmax_, static_cast<std::int64_t>(cnt_[cls]));
    } else {
      --coc_[cnt_[cls]];
      --cnt_[cls];
      ++coc_[cnt_[cls]];
      while (curmax_ > 0 && coc_[curmax_] == 0) --curmax_;
    }
  }

  void apply(const Event& e) {
    bump(e.from, -1);
    bump(e.to, +1);
  }

  std::uint64_t p_, s_, q_;
  std::vector<std::uint32_t> cnt_;
  std::vector<std::int64_t> coc_;
  std::int64_t curmax_ = 0;
  std::vector<std::uint32_t> touched_;
  std::vector<Event> events_;
};

struct ListRun {
  // Configuration.
  std::uint32_t n = 0;
  std::uint32_t delta = 0;
  std::uint64_t universe = 0;
  std::uint64_t p_part = 0;  // partition-family prime
  std::uint64_t p_cw = 0;    // hash-selection prime
  double inflation = 1.0;
  SpaceMeter* meter = nullptr;
  MultiPassSource* source = nullptr;
  const ListColorHooks* hooks = nullptr;

  PartialColoring chi{0};
  std::vector<VertexId> uncolored;
  std::vector<std::uint32_t> slot;

  // Per-epoch stage state.
  std::uint32_t k = 0;
  std::uint64_t s = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> stage_partitions;  // (a, b)
  std::vector<std::vector<std::uint32_t>> stage_parts;  // per stage, per slot
  std::vector<std::uint32_t> group;                     // P-equality classes
  std::vector<std::uint64_t> cur_lp;                    // |L_x ∩ P_x| per slot
  std::vector<std::uint64_t> slack_cur;                 // s_x per slot

  void rebuild_slots() {
    std::fill(slot.begin(), slot.end(), kNoSlot);
    for (std::uint32_t i = 0; i < uncolored.size(); ++i) slot[uncolored[i]] = i;
  }

  std::uint64_t part_of(std::uint64_t a, std::uint64_t b, ColorId c) const {
    return ((a * c + b) % p_part) % s;
  }

  bool member(std::uint32_t sl, ColorId c) const {
    for (std::size_t t = 0; t < stage_partitions.size(); ++t) {
      const auto& [a, b] = stage_partitions[t];
      if (part_of(a, b, c) != stage_parts[t][sl]) return false;
    }
    return true;
  }

  template <typename EdgeFn, typename ListFn>
  void stream(EdgeFn&& on_edge, ListFn&& on_list) {
    auto pass = source->open_pass();
    while (const StreamToken* t = pass.next()) {
      switch (t->kind) {
        case StreamToken::Kind::edge:
          on_edge(t->u, t->v);
          break;
        case StreamToken::Kind::list:
          on_list(t->u, t->list);
          break;
        case StreamToken::Kind::query:
          throw InputError("query token in a multipass stream");
      }
    }
  }
};

// Setup pass: degrees, list presence and sizes, universe bound, validation.
void setup_pass(ListRun& run, const ListColorOptions& options) {
  std::vector<std::uint32_t> deg(run.n, 0);
  std::vector<std::uint32_t> list_size(run.n, 0);
  std::uint64_t max_color = 0;
  run.stream(
      [&](VertexId a, VertexId b) {
        if (a >= run.n || b >= run.n) throw InputError("edge endpoint out of range");
        ++deg[a];
        ++deg[b];
      },
      [&](VertexId x, const std::vector<ColorId>& list) {
        if (x >= run.n) throw InputError("list vertex out of range");
        if (list_size[x] != 0) throw InputError("duplicate list token for vertex " + std::to_string(x));
        if (list.empty()) throw InputError("empty color list for vertex " + std::to_string(x));
        std::vector<ColorId> sorted(list);
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
          throw InputError("duplicate color in list of vertex " + std::to_string(x));
        list_size[x] = static_cast<std::uint32_t>(list.size());
        max_color = std::max<std::uint64_t>(max_color, sorted.back());
      });
  std::uint32_t max_deg = 0;
  for (VertexId v = 0; v < run.n; ++v) {
    if (list_size[v] == 0)
      throw InputError("missing color list for vertex " + std::to_string(v));
    if (list_size[v] < deg[v] + 1)
      throw InputError("list of vertex " + std::to_string(v) + " has " +
                       std::to_string(list_size[v]) + " colors but degree " + std::to_string(deg[v]));
    max_deg = std::max(max_deg, deg[v]);
  }
  if (options.delta) {
    if (*options.delta < max_deg)
      throw InputError("stream degree exceeds Delta=" + std::to_string(*options.delta));
    run.delta = *options.delta;
  } else {
    run.delta = max_deg;
  }
  // The stage budget is sized for lists within the palette bound Delta+1.
  for (VertexId v = 0; v < run.n; ++v)
    if (list_size[v] > run.delta + 1)
      throw InputError("list of vertex " + std::to_string(v) + " exceeds Delta+1 colors");
  run.universe = max_color + 1;
  run.p_part = prime_in_range(std::max<std::uint64_t>(run.universe, 2), 2 * std::max<std::uint64_t>(run.universe, 2) + 16);
}

// Four refinement passes over the flat (a, b) enumeration of the partition
// family; picks a member whose cost is at most the family mean.
struct PartitionChoice {
  std::uint64_t a = 0, b = 0;
  std::int64_t cost = 0;           // sum over U of the chosen partition excess
  std::int64_t lp_minus1 = 0;      // sum over U of (|L ∩ P| - 1), same pass
};

PartitionChoice select_partition(ListRun& run) {
  const std::uint64_t family = (run.p_part - 1) * run.p_part;
  std::uint64_t g = 1;
  while (g * g * g * g < family) ++g;

  PartitionSweeper sweeper(run.p_part, run.s, run.delta + 1);
  std::vector<ColorId> filtered;

  std::uint64_t lo = 0, hi = family;
  std::int64_t chosen_cost = 0;
  std::int64_t lp_minus1 = 0;
  for (int pass = 0; pass < 4; ++pass) {
    const std::uint64_t len = hi - lo;
    const std::uint64_t chunk = (len + g - 1) / g;
    const std::size_t chunks = static_cast<std::size_t>((len + chunk - 1) / chunk);
    std::vector<std::int64_t> sums(chunks, 0);
    ScopedCharge charge(run.meter, SpaceCategory::accumulators,
                        static_cast<std::int64_t>(chunks));
    std::int64_t lp_acc = 0;
    run.stream([](VertexId, VertexId) {},
               [&](VertexId x, const std::vector<ColorId>& list) {
                 const std::uint32_t sl = run.slot[x];
                 if (sl == kNoSlot) return;
                 filtered.clear();
                 for (ColorId c : list)
                   if (run.member(sl, c)) filtered.push_back(c);
                 lp_acc += static_cast<std::int64_t>(filtered.size()) - 1;
                 if (filtered.empty()) return;
                 for (std::size_t ci = 0; ci < chunks; ++ci) {
                   std::uint64_t flat = lo + ci * chunk;
                   const std::uint64_t flat_end = std::min(hi, flat + chunk);
                   while (flat < flat_end) {
                     const std::uint64_t a = flat / run.p_part + 1;
                     const std::uint64_t b0 = flat % run.p_part;
                     const std::uint64_t col_end = (a - 1) * run.p_part + run.p_part;
                     const std::uint64_t b1 = std::min(flat_end, col_end) - (a - 1) * run.p_part;
                     sums[ci] += sweeper.window_sum(filtered, a, b0, b1);
                     flat = std::min(flat_end, col_end);
                   }
                 }
               });
    // Minimize the mean; chunk sizes may differ by one member.
    std::size_t best = 0;
    auto size_of = [&](std::size_t ci) {
      return std::min(hi, lo + (ci + 1) * chunk) - (lo + ci * chunk);
    };
    for (std::size_t ci = 1; ci < chunks; ++ci) {
      const __int128 lhs = static_cast<__int128>(sums[ci]) * size_of(best);
      const __int128 rhs = static_cast<__int128>(sums[best]) * size_of(ci);
      if (lhs < rhs) best = ci;
    }
    hi = std::min(hi, lo + (best + 1) * chunk);
    lo = lo + best * chunk;
    chosen_cost = sums[best];
    lp_minus1 = lp_acc;
  }
  if (hi - lo != 1) throw TheoryViolation("partition refinement did not isolate one member");

  PartitionChoice choice;
  choice.a = lo / run.p_part + 1;
  choice.b = lo % run.p_part;
  choice.cost = chosen_cost;
  choice.lp_minus1 = lp_minus1;

  // Selected member sits at or below the family mean, which the partition
  // family guarantees is at most (1/sqrt(s)) * sum(|L ∩ P| - 1).
  const __int128 lhs2 = static_cast<__int128>(choice.cost) * choice.cost * static_cast<__int128>(run.s);
  const __int128 rhs2 = static_cast<__int128>(choice.lp_minus1) * choice.lp_minus1;
  if (choice.cost > 0 && lhs2 > rhs2)
    throw TheoryViolation("selected partition exceeds the sub-average excess bound");
  return choice;
}

// Emit the interval/cost contributions of all patterns shared by two slots.
template <typename SlackFn>
void emit_common(HashSelector::Sink& sink, const GwSampler& gw, std::uint32_t sa, std::uint32_t sb,
                 SlackFn&& slack_of) {
  const auto ea = gw.entries(sa);
  const auto eb = gw.entries(sb);
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].pattern < eb[j].pattern) {
      ++i;
    } else if (eb[j].pattern < ea[i].pattern) {
      ++j;
    } else {
      const double cost = 1.0 / static_cast<double>(slack_of(sa, ea[i].pattern)) +
                          1.0 / static_cast<double>(slack_of(sb, eb[j].pattern));
      sink.add(Arc{ea[i].begin, ea[i].end - ea[i].begin},
               Arc{eb[j].begin, eb[j].end - eb[j].begin}, cost);
      ++i;
      ++j;
    }
  }
}

// One adaptive stage: select a partition (4 passes), fill slack counters
// (1 pass), then choose the steering hash (2 passes) and shrink.
ListStageSnapshot run_adaptive_stage(ListRun& run, std::uint32_t epoch_idx, std::uint32_t stage_idx) {
  const std::uint64_t u_count = run.uncolored.size();
  ListStageSnapshot snap;
  snap.epoch = epoch_idx;
  snap.stage = stage_idx;
  snap.k = run.k;
  snap.s = run.s;

  PartitionChoice choice = select_partition(run);
  snap.part_a = choice.a;
  snap.part_b = choice.b;
  snap.selected_cost = choice.cost;
  snap.lp_minus1_before = choice.lp_minus1;

  // Slack counters for (slot, part) pairs.
  const std::uint64_t entries = u_count * run.s;
  if (entries > 2ull * run.n)
    throw TheoryViolation("stage counter storage exceeds 2n entries");
  ScopedCharge counter_charge(run.meter, SpaceCategory::counters,
                              static_cast<std::int64_t>(2 * entries));
  std::vector<std::uint32_t> used(entries, 0);
  std::vector<std::uint32_t> avail(entries, 0);
  run.stream(
      [&](VertexId a, VertexId b) {
        const auto side = [&](VertexId x, VertexId y) {
          const std::uint32_t sx = run.slot[x];
          if (sx == kNoSlot || !run.chi.is_colored(y)) return;
          const ColorId c = run.chi.chi[y];
          if (!run.member(sx, c)) return;
          ++used[sx * run.s + run.part_of(choice.a, choice.b, c)];
        };
        side(a, b);
        side(b, a);
      },
      [&](VertexId x, const std::vector<ColorId>& list) {
        const std::uint32_t sx = run.slot[x];
        if (sx == kNoSlot) return;
        for (ColorId c : list)
          if (run.member(sx, c)) ++avail[sx * run.s + run.part_of(choice.a, choice.b, c)];
      });

  std::vector<std::uint64_t> slack(entries, 0);
  for (std::uint64_t i = 0; i < entries; ++i)
    slack[i] = avail[i] > used[i] ? avail[i] - used[i] : 0;

  GwSampler gw = GwSampler::build(run.p_cw, u_count, run.inflation);
  {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ws;
    for (std::uint32_t sl = 0; sl < u_count; ++sl) {
      ws.clear();
      for (std::uint64_t j = 0; j < run.s; ++j) ws.emplace_back(j, slack[sl * run.s + j]);
      gw.fill_slot(sl, ws);
    }
  }

  auto slack_of = [&](std::uint32_t sl, std::uint64_t j) { return slack[sl * run.s + j]; };
  auto enumerate = [&](HashSelector::Sink& sink) {
    run.stream(
        [&](VertexId a, VertexId b) {
          const std::uint32_t sa = run.slot[a];
          const std::uint32_t sb = run.slot[b];
          if (sa == kNoSlot || sb == kNoSlot || run.group[sa] != run.group[sb]) return;
          sink.begin_edge(a, b);
          emit_common(sink, gw, sa, sb, slack_of);
        },
        [](VertexId, const std::vector<ColorId>&) {});
  };

  HashSelector selector(run.p_cw, run.meter);
  const HashSelector::Result sel = selector.select(enumerate);

  // Apply: every P_x shrinks to its selected part.
  std::vector<std::uint32_t> parts(u_count, 0);
  std::int64_t lp_after = 0;
  for (std::uint32_t sl = 0; sl < u_count; ++sl) {
    const std::uint64_t r = (mulmod(sel.fn.a, run.uncolored[sl], run.p_cw) + sel.fn.b) % run.p_cw;
    const std::uint64_t j = gw.pattern_of(sl, r);
    const std::uint64_t sv = slack[sl * run.s + j];
    if (sv == 0) throw TheoryViolation("list slack dropped to zero");
    parts[sl] = static_cast<std::uint32_t>(j);
    run.slack_cur[sl] = sv;
    run.cur_lp[sl] = avail[sl * run.s + j];
    lp_after += static_cast<std::int64_t>(run.cur_lp[sl]) - 1;
  }
  run.stage_partitions.emplace_back(choice.a, choice.b);
  run.stage_parts.push_back(std::move(parts));

  // Regroup: equal chains stay equal, diverging chains become disjoint.
  {
    std::vector<std::uint64_t> keys(u_count);
    for (std::uint32_t sl = 0; sl < u_count; ++sl)
      keys[sl] = (static_cast<std::uint64_t>(run.group[sl]) << 32) | run.stage_parts.back()[sl];
    std::vector<std::uint64_t> sorted(keys);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::uint32_t sl = 0; sl < u_count; ++sl)
      run.group[sl] = static_cast<std::uint32_t>(
          std::lower_bound(sorted.begin(), sorted.end(), keys[sl]) - sorted.begin());
  }

  snap.lp_minus1_after = lp_after;
  return snap;
}

struct FinalStageState {
  std::vector<std::vector<ColorId>> candidates;  // per slot, ascending
  std::vector<std::vector<std::uint8_t>> live;
  std::vector<ColorId> proposed;
};

// Final stage over singletons: one pass records |L ∩ P| candidates, one pass
// clears availability bits, two passes choose the steering hash.
FinalStageState run_final_stage(ListRun& run) {
  const std::uint64_t u_count = run.uncolored.size();
  FinalStageState st;
  st.candidates.resize(u_count);
  st.live.resize(u_count);
  st.proposed.assign(u_count, 0);

  run.stream([](VertexId, VertexId) {},
             [&](VertexId x, const std::vector<ColorId>& list) {
               const std::uint32_t sl = run.slot[x];
               if (sl == kNoSlot) return;
               auto& cand = st.candidates[sl];
               for (ColorId c : list)
                 if (run.member(sl, c)) cand.push_back(c);
               std::sort(cand.begin(), cand.end());
             });
  std::uint64_t total_candidates = 0;
  const bool lp_tracked = !run.stage_partitions.empty();
  for (std::uint32_t sl = 0; sl < u_count; ++sl) {
    if (lp_tracked && st.candidates[sl].size() != run.cur_lp[sl])
      throw TheoryViolation("candidate count disagrees with the tracked |L ∩ P|");
    total_candidates += st.candidates[sl].size();
    st.live[sl].assign(st.candidates[sl].size(), 1);
  }
  if (total_candidates > 2 * u_count)
    throw TheoryViolation("final-stage candidate budget exceeds 2|U|");
  ScopedCharge charge(run.meter, SpaceCategory::counters,
                      static_cast<std::int64_t>(2 * total_candidates));

  run.stream(
      [&](VertexId a, VertexId b) {
        const auto side = [&](VertexId x, VertexId y) {
          const std::uint32_t sx = run.slot[x];
          if (sx == kNoSlot || !run.chi.is_colored(y)) return;
          const ColorId c = run.chi.chi[y];
          const auto& cand = st.candidates[sx];
          const auto it = std::lower_bound(cand.begin(), cand.end(), c);
          if (it != cand.end() && *it == c) st.live[sx][it - cand.begin()] = 0;
        };
        side(a, b);
        side(b, a);
      },
      [](VertexId, const std::vector<ColorId>&) {});

  GwSampler gw = GwSampler::build(run.p_cw, u_count, run.inflation);
  for (std::uint32_t sl = 0; sl < u_count; ++sl) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ws;
    const auto& cand = st.candidates[sl];
    for (std::size_t i = 0; i < cand.size(); ++i) ws.emplace_back(cand[i], st.live[sl][i]);
    gw.fill_slot(sl, ws);
  }

  auto slack_one = [](std::uint32_t, std::uint64_t) { return std::uint64_t{1}; };
  auto enumerate = [&](HashSelector::Sink& sink) {
    run.stream(
        [&](VertexId a, VertexId b) {
          const std::uint32_t sa = run.slot[a];
          const std::uint32_t sb = run.slot[b];
          if (sa == kNoSlot || sb == kNoSlot || run.group[sa] != run.group[sb]) return;
          sink.begin_edge(a, b);
          emit_common(sink, gw, sa, sb, slack_one);
        },
        [](VertexId, const std::vector<ColorId>&) {});
  };
  HashSelector selector(run.p_cw, run.meter);
  const HashSelector::Result sel = selector.select(enumerate);

  for (std::uint32_t sl = 0; sl < u_count; ++sl) {
    const std::uint64_t r = (mulmod(sel.fn.a, run.uncolored[sl], run.p_cw) + sel.fn.b) % run.p_cw;
    st.proposed[sl] = static_cast<ColorId>(gw.pattern_of(sl, r));
    run.slack_cur[sl] = 1;
  }
  return st;
}

ListEpochSummary run_epoch(ListRun& run, std::uint32_t epoch_idx) {
  const std::uint64_t u_count = run.uncolored.size();
  run.k = static_cast<std::uint32_t>(std::bit_width(run.n / u_count));
  run.s = std::uint64_t{1} << run.k;
  run.stage_partitions.clear();
  run.stage_parts.clear();
  run.group.assign(u_count, 0);
  run.cur_lp.assign(u_count, 0);
  run.slack_cur.assign(u_count, 0);

  // Adaptive stage count: smallest t with 2^{t k} >= (Delta + 1)^2.
  std::uint32_t adaptive = 0;
  {
    const unsigned __int128 target =
        static_cast<unsigned __int128>(run.delta + 1) * (run.delta + 1);
    unsigned __int128 have = 1;
    while (have < target) {
      have <<= run.k;
      ++adaptive;
    }
  }

  ListEpochSummary summary;
  summary.epoch = epoch_idx;
  summary.u_before = u_count;
  summary.k = run.k;
  summary.adaptive_stages = adaptive;

  for (std::uint32_t t = 1; t <= adaptive; ++t) {
    ListStageSnapshot snap = run_adaptive_stage(run, epoch_idx, t);
    // Exact decay check: sum(|L ∩ P| - 1)^2 * 2^{t k} <= (Delta |U|)^2.
    if (snap.lp_minus1_after > 0) {
      const std::uint64_t shift = static_cast<std::uint64_t>(t) * run.k;
      const unsigned __int128 lhs =
          static_cast<unsigned __int128>(snap.lp_minus1_after) * snap.lp_minus1_after;
      const unsigned __int128 rhs =
          (static_cast<unsigned __int128>(run.delta) * u_count) *
          (static_cast<unsigned __int128>(run.delta) * u_count);
      const bool ok = shift < 120 && (lhs << shift) <= rhs;
      if (!ok)
        throw TheoryViolation("list-size decay invariant failed at stage " + std::to_string(t));
    }
    if (run.hooks && run.hooks->on_stage_end) run.hooks->on_stage_end(snap);
  }

  // Entering the last stage the candidate mass fits the bit budget.
  {
    std::int64_t lp_minus1 = 0;
    if (adaptive == 0) {
      // No adaptive stages ran (Delta = 0); seed cur_lp in the final pass.
    } else {
      for (std::uint32_t sl = 0; sl < u_count; ++sl)
        lp_minus1 += static_cast<std::int64_t>(run.cur_lp[sl]) - 1;
      if (lp_minus1 > static_cast<std::int64_t>(u_count))
        throw TheoryViolation("sum(|L ∩ P| - 1) above |U| before the final stage");
    }
  }

  FinalStageState fin = run_final_stage(run);

  std::uint64_t total_candidates = 0;
  for (auto& c : fin.candidates) total_candidates += c.size();
  summary.final_candidates = total_candidates;

  // End-of-epoch pass: conflicting proposals, independent set, commit.
  std::vector<Edge> f_edges;
  run.stream(
      [&](VertexId a, VertexId b) {
        const std::uint32_t sa = run.slot[a];
        const std::uint32_t sb = run.slot[b];
        if (sa != kNoSlot && sb != kNoSlot && fin.proposed[sa] == fin.proposed[sb])
          f_edges.push_back(Edge::canonical(a, b));
      },
      [](VertexId, const std::vector<ColorId>&) {});
  ScopedCharge f_charge(run.meter, SpaceCategory::stored_edges,
                        static_cast<std::int64_t>(2 * f_edges.size()));
  if (f_edges.size() > u_count)
    throw TheoryViolation("epoch " + std::to_string(epoch_idx) + ": |F| exceeds |U|");

  std::vector<Edge> f_local;
  f_local.reserve(f_edges.size());
  for (const Edge& e : f_edges)
    f_local.push_back(Edge::canonical(run.slot[e.u], run.slot[e.v]));
  AdjacencyGraph f_graph(static_cast<VertexId>(u_count), f_local);
  const std::vector<VertexId> independent = find_independent_set(f_graph);
  for (VertexId sl : independent) run.chi.chi[run.uncolored[sl]] = fin.proposed[sl];

  std::vector<VertexId> remaining;
  for (std::uint32_t sl = 0; sl < u_count; ++sl)
    if (!run.chi.is_colored(run.uncolored[sl])) remaining.push_back(run.uncolored[sl]);
  summary.u_after = remaining.size();
  summary.f_size = f_edges.size();
  if (3 * summary.u_after > 2 * summary.u_before)
    throw TheoryViolation("epoch shrink factor above 2/3");

  run.uncolored = std::move(remaining);
  run.rebuild_slots();
  if (run.hooks && run.hooks->on_epoch_end) run.hooks->on_epoch_end(summary);
  return summary;
}

}  // namespace

ListColorResult ListColoring::run(MultiPassSource& source, const ListColorOptions& options,
                                  SpaceMeter* meter, const ListColorHooks* hooks) {
  if (options.n == 0) throw UsageError("listcolor: n must be positive");
  ListRun run;
  run.n = options.n;
  run.meter = meter;
  run.source = &source;
  run.hooks = hooks;
  run.chi = PartialColoring(run.n);
  run.slot.assign(run.n, kNoSlot);
  run.uncolored.resize(run.n);
  for (VertexId v = 0; v < run.n; ++v) run.uncolored[v] = v;
  run.rebuild_slots();

  setup_pass(run, options);

  if (run.n >= 2) {
    const double lg = std::log2(static_cast<double>(run.n));
    run.p_cw = prime_in_range(static_cast<std::uint64_t>(std::ceil(8.0 * run.n * lg)),
                              static_cast<std::uint64_t>(std::floor(16.0 * run.n * lg)));
    run.inflation = 1.0 + 1.0 / (8.0 * lg);
  } else {
    run.p_cw = 2;
  }

  ListColorResult result;
  std::uint32_t epoch_idx = 0;
  while (!run.uncolored.empty()) {
    result.epochs.push_back(run_epoch(run, ++epoch_idx));
    if (run.uncolored.size() * static_cast<std::uint64_t>(run.delta) <= run.n) break;
  }

  // Final pass: edges incident to U plus the lists of U, then greedy.
  {
    std::vector<std::vector<VertexId>> incident(run.n);
    std::vector<std::vector<ColorId>> lists(run.n);
    run.stream(
        [&](VertexId a, VertexId b) {
          if (run.slot[a] != kNoSlot) incident[a].push_back(b);
          if (run.slot[b] != kNoSlot) incident[b].push_back(a);
        },
        [&](VertexId x, const std::vector<ColorId>& list) {
          if (run.slot[x] != kNoSlot) lists[x] = list;
        });
    for (VertexId x : run.uncolored) {
      std::vector<ColorId> taken;
      for (VertexId y : incident[x])
        if (run.chi.is_colored(y)) taken.push_back(run.chi.chi[y]);
      std::sort(taken.begin(), taken.end());
      taken.erase(std::unique(taken.begin(), taken.end()), taken.end());
      ColorId chosen = kUncolored;
      for (ColorId c : lists[x]) {
        if (!std::binary_search(taken.begin(), taken.end(), c)) {
          chosen = c;
          break;
        }
      }
      if (chosen == kUncolored)
        throw TheoryViolation("list exhausted during greedy completion");
      run.chi.chi[x] = chosen;
    }
  }

  result.coloring = std::move(run.chi);
  result.delta = run.delta;
  result.passes = source.pass_count();
  result.universe = run.universe;
  result.partition_prime = run.p_part;
  result.cw_prime = run.p_cw;
  return result;
}

}  // namespace streamcolor
