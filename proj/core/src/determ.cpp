#include "streamcolor/determ.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace streamcolor {

namespace {

constexpr std::uint32_t kNoSlot = 0xffffffffu;

struct RunState {
  std::uint32_t n = 0;
  std::uint32_t delta = 0;
  std::uint32_t b = 0;
  std::uint64_t p = 0;
  double inflation = 1.0;
  PartialColoring chi;
  std::vector<VertexId> uncolored;
  std::vector<std::uint32_t> slot;  // vertex -> index into uncolored, or kNoSlot
  bool degrees_validated = false;
  SpaceMeter* meter = nullptr;
  MultiPassSource* source = nullptr;
  const DetermHooks* hooks = nullptr;
  std::uint64_t max_counter_entries = 0;
};

void rebuild_slots(RunState& st) {
  std::fill(st.slot.begin(), st.slot.end(), kNoSlot);
  for (std::uint32_t i = 0; i < st.uncolored.size(); ++i) st.slot[st.uncolored[i]] = i;
}

// Streams one pass, dispatching edges; validates the degree bound the first
// time the stream is read so malformed inputs fail before any output exists.
template <typename EdgeFn>
void stream_edges(RunState& st, EdgeFn&& fn) {
  auto pass = st.source->open_pass();
  const bool validate = !st.degrees_validated;
  std::vector<std::uint32_t> deg;
  if (validate) deg.assign(st.n, 0);
  while (const StreamToken* t = pass.next()) {
    switch (t->kind) {
      case StreamToken::Kind::edge: {
        if (t->u >= st.n || t->v >= st.n)
          throw InputError("edge endpoint out of range in stream");
        if (validate) {
          if (++deg[t->u] > st.delta || ++deg[t->v] > st.delta)
            throw InputError("stream degree exceeds Delta=" + std::to_string(st.delta));
        }
        fn(t->u, t->v);
        break;
      }
      case StreamToken::Kind::list:
        throw InputError("list token in an edge-only stream");
      case StreamToken::Kind::query:
        throw InputError("query token in a multipass stream");
    }
  }
  st.degrees_validated = true;
}

// |P_child ∩ [0, delta]| for the child subcube with `fixed` low bits pinned
// to `pattern`.
std::uint64_t child_avail(std::uint64_t pattern, std::uint32_t fixed, std::uint32_t delta) {
  if (pattern > delta) return 0;
  return ((static_cast<std::uint64_t>(delta) - pattern) >> fixed) + 1;
}

struct StageOutcome {
  CarterWegman::Fn chosen;
  double part_sum = 0;
  double fn_value = 0;
};

// One stage: three streaming passes (slack counters, part selection, function
// selection), then shrink every P_x by k_stage bits.
StageOutcome run_stage(RunState& st, std::uint32_t epoch_idx, std::uint32_t stage_idx,
                       std::uint32_t k_epoch, std::uint32_t k_stage, std::uint32_t fixed_bits,
                       std::vector<std::uint64_t>& pattern, std::vector<std::uint64_t>& slack_cur) {
  const std::uint64_t u_count = st.uncolored.size();
  const std::uint64_t patterns = std::uint64_t{1} << k_stage;
  const std::uint64_t entries = u_count << k_stage;
  st.max_counter_entries = std::max(st.max_counter_entries, entries);
  if (entries > 2ull * st.n)
    throw TheoryViolation("stage counter storage exceeds 2n entries");

  ScopedCharge counter_charge(st.meter, SpaceCategory::counters,
                              static_cast<std::int64_t>(entries));

  // Pass 1: per (x, pattern) counts of colored-neighbor occurrences.
  std::vector<std::uint32_t> used(entries, 0);
  const std::uint64_t fixed_mask = (std::uint64_t{1} << fixed_bits) - 1;
  const std::uint64_t pat_mask = patterns - 1;
  stream_edges(st, [&](VertexId a, VertexId b) {
    const auto count_side = [&](VertexId x, VertexId y) {
      const std::uint32_t sx = st.slot[x];
      if (sx == kNoSlot || !st.chi.is_colored(y)) return;
      const std::uint64_t c = st.chi.chi[y];
      if ((c & fixed_mask) != pattern[sx]) return;
      ++used[(static_cast<std::uint64_t>(sx) << k_stage) | ((c >> fixed_bits) & pat_mask)];
    };
    count_side(a, b);
    count_side(b, a);
  });

  // Child slacks; on the first stage also certify the epoch-entry slack.
  std::vector<std::uint64_t> slack(entries, 0);
  for (std::uint32_t s = 0; s < u_count; ++s) {
    std::uint64_t avail_sum = 0, used_sum = 0;
    for (std::uint64_t j = 0; j < patterns; ++j) {
      const std::uint64_t child_pat = pattern[s] | (j << fixed_bits);
      const std::uint64_t avail = child_avail(child_pat, fixed_bits + k_stage, st.delta);
      const std::uint64_t u = used[(static_cast<std::uint64_t>(s) << k_stage) | j];
      slack[(static_cast<std::uint64_t>(s) << k_stage) | j] = avail > u ? avail - u : 0;
      avail_sum += avail;
      used_sum += u;
    }
    if (stage_idx == 1 && avail_sum <= used_sum)
      throw TheoryViolation("epoch-entry slack is zero at vertex " +
                            std::to_string(st.uncolored[s]));
  }

  // Offline: weights and the sampling map g_w.
  GwSampler gw = GwSampler::build(st.p, u_count, st.inflation);
  {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ws;
    for (std::uint32_t s = 0; s < u_count; ++s) {
      ws.clear();
      for (std::uint64_t j = 0; j < patterns; ++j)
        ws.emplace_back(j, slack[(static_cast<std::uint64_t>(s) << k_stage) | j]);
      gw.fill_slot(s, ws);
    }
  }
  ScopedCharge gw_charge(st.meter, SpaceCategory::counters,
                         static_cast<std::int64_t>(gw.total_entries() * 2));

  // Conflict enumeration shared by passes 2 and 3.
  auto enumerate = [&](HashSelector::Sink& sink) {
    stream_edges(st, [&](VertexId a, VertexId b) {
      const std::uint32_t sa = st.slot[a];
      const std::uint32_t sb = st.slot[b];
      if (sa == kNoSlot || sb == kNoSlot || pattern[sa] != pattern[sb]) return;
      sink.begin_edge(a, b);
      const auto ea = gw.entries(sa);
      const auto eb = gw.entries(sb);
      std::size_t i = 0, j = 0;
      while (i < ea.size() && j < eb.size()) {
        if (ea[i].pattern < eb[j].pattern) {
          ++i;
        } else if (eb[j].pattern < ea[i].pattern) {
          ++j;
        } else {
          const std::uint64_t pj = ea[i].pattern;
          const double cost =
              1.0 / static_cast<double>(slack[(std::uint64_t{sa} << k_stage) | pj]) +
              1.0 / static_cast<double>(slack[(std::uint64_t{sb} << k_stage) | pj]);
          sink.add(Arc{ea[i].begin, ea[i].end - ea[i].begin},
                   Arc{eb[j].begin, eb[j].end - eb[j].begin}, cost);
          ++i;
          ++j;
        }
      }
    });
  };

  HashSelector selector(st.p, st.meter);
  HashSelector::Result sel = selector.select(enumerate);

  // Snapshot before applying the shrink, when observers care.
  StageSnapshot snap;
  const bool observed = st.hooks && st.hooks->on_stage_end;
  if (observed) snap.pre_pattern = pattern;

  // Shrink every P_x to the child selected by h*.
  for (std::uint32_t s = 0; s < u_count; ++s) {
    const std::uint64_t r = (mulmod(sel.fn.a, st.uncolored[s], st.p) + sel.fn.b) % st.p;
    const std::uint64_t j = gw.pattern_of(s, r);
    const std::uint64_t sl = slack[(static_cast<std::uint64_t>(s) << k_stage) | j];
    if (sl == 0)
      throw TheoryViolation("slack dropped to zero at vertex " +
                            std::to_string(st.uncolored[s]));
    pattern[s] |= j << fixed_bits;
    slack_cur[s] = sl;
  }

  if (observed) {
    snap.epoch = epoch_idx;
    snap.stage = stage_idx;
    snap.k_epoch = k_epoch;
    snap.k_stage = k_stage;
    snap.b = st.b;
    snap.fixed_before = fixed_bits;
    snap.fixed_after = fixed_bits + k_stage;
    snap.counter_entries = entries;
    snap.p = st.p;
    snap.chosen = sel.fn;
    snap.part_sum = sel.part_sum;
    snap.fn_value = sel.fn_value;
    snap.uncolored = &st.uncolored;
    snap.post_pattern = &pattern;
    snap.slack_table = &slack;
    snap.post_slack = &slack_cur;
    snap.gw = &gw;
    st.hooks->on_stage_end(snap);
  }

  return StageOutcome{sel.fn, sel.part_sum, sel.fn_value};
}

EpochSummary run_epoch(RunState& st, std::uint32_t epoch_idx) {
  const std::uint64_t u_count = st.uncolored.size();
  if (st.hooks && st.hooks->on_epoch_begin) st.hooks->on_epoch_begin(epoch_idx, st.uncolored);

  const std::uint32_t k = static_cast<std::uint32_t>(std::bit_width(st.n / u_count));
  const std::uint32_t stages = st.b == 0 ? 0 : (st.b + k - 1) / k;

  std::vector<std::uint64_t> pattern(u_count, 0);
  std::vector<std::uint64_t> slack_cur(u_count, 0);
  ScopedCharge pcc_charge(st.meter, SpaceCategory::counters,
                          static_cast<std::int64_t>(2 * u_count));

  std::uint32_t fixed_bits = 0;
  for (std::uint32_t i = 1; i <= stages; ++i) {
    const std::uint32_t k_stage = (i < stages) ? k : st.b - k * (stages - 1);
    run_stage(st, epoch_idx, i, k, k_stage, fixed_bits, pattern, slack_cur);
    fixed_bits += k_stage;
  }

  // End-of-epoch pass: collect the conflicting proposed edges.
  std::vector<Edge> f_edges;
  stream_edges(st, [&](VertexId a, VertexId b) {
    const std::uint32_t sa = st.slot[a];
    const std::uint32_t sb = st.slot[b];
    if (sa != kNoSlot && sb != kNoSlot && pattern[sa] == pattern[sb])
      f_edges.push_back(Edge::canonical(a, b));
  });
  ScopedCharge f_charge(st.meter, SpaceCategory::stored_edges,
                        static_cast<std::int64_t>(f_edges.size() * 2));
  if (f_edges.size() > u_count)
    throw TheoryViolation("epoch " + std::to_string(epoch_idx) + ": |F| = " +
                          std::to_string(f_edges.size()) + " exceeds |U| = " +
                          std::to_string(u_count));

  for (std::uint32_t s = 0; s < u_count; ++s)
    if (pattern[s] > st.delta)
      throw TheoryViolation("proposed color beyond the palette");

  // Commit the proposed colors on an independent set of the conflict graph.
  std::vector<Edge> f_local;
  f_local.reserve(f_edges.size());
  for (const Edge& e : f_edges)
    f_local.push_back(Edge::canonical(st.slot[e.u], st.slot[e.v]));
  AdjacencyGraph f_graph(static_cast<VertexId>(u_count), f_local);
  const std::vector<VertexId> independent = find_independent_set(f_graph);

  std::vector<VertexId> committed;
  committed.reserve(independent.size());
  for (VertexId s : independent) {
    const VertexId x = st.uncolored[s];
    st.chi.chi[x] = static_cast<ColorId>(pattern[s]);
    committed.push_back(x);
  }

  std::vector<VertexId> remaining;
  remaining.reserve(u_count - independent.size());
  for (std::uint32_t s = 0; s < u_count; ++s)
    if (!st.chi.is_colored(st.uncolored[s])) remaining.push_back(st.uncolored[s]);

  EpochSummary summary;
  summary.epoch = epoch_idx;
  summary.u_before = u_count;
  summary.u_after = remaining.size();
  summary.f_size = f_edges.size();
  summary.k = k;
  summary.stages = stages;

  if (3 * summary.u_after > 2 * summary.u_before)
    throw TheoryViolation("epoch shrink factor above 2/3");

  if (st.hooks && st.hooks->on_epoch_end)
    st.hooks->on_epoch_end(summary, st.uncolored, pattern, f_edges, committed);

  st.uncolored = std::move(remaining);
  rebuild_slots(st);
  return summary;
}

}  // namespace

DetermResult DetermColoring::run(MultiPassSource& source, const DetermOptions& options,
                                 SpaceMeter* meter, const DetermHooks* hooks) {
  if (options.n == 0) throw UsageError("determ: n must be positive");
  RunState st;
  st.n = options.n;
  st.meter = meter;
  st.source = &source;
  st.hooks = hooks;
  st.chi = PartialColoring(st.n);
  st.slot.assign(st.n, kNoSlot);

  DetermResult result;

  if (options.delta) {
    st.delta = *options.delta;
  } else {
    // Preliminary counting pass; adds exactly one pass to the total.
    std::vector<std::uint32_t> deg(st.n, 0);
    auto pass = source.open_pass();
    while (const StreamToken* t = pass.next()) {
      if (t->kind != StreamToken::Kind::edge) throw InputError("non-edge token in edge stream");
      if (t->u >= st.n || t->v >= st.n) throw InputError("edge endpoint out of range");
      ++deg[t->u];
      ++deg[t->v];
    }
    st.delta = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    st.degrees_validated = true;
    result.delta_discovered = true;
  }

  st.b = static_cast<std::uint32_t>(ceil_log2(st.delta + 1));
  if (st.n >= 2) {
    const double lg = std::log2(static_cast<double>(st.n));
    st.p = prime_in_range(static_cast<std::uint64_t>(std::ceil(8.0 * st.n * lg)),
                          static_cast<std::uint64_t>(std::floor(16.0 * st.n * lg)));
    st.inflation = 1.0 + 1.0 / (8.0 * lg);
  } else {
    st.p = 2;
  }

  st.uncolored.resize(st.n);
  for (VertexId v = 0; v < st.n; ++v) st.uncolored[v] = v;
  rebuild_slots(st);

  ScopedCharge chi_charge(st.meter, SpaceCategory::counters,
                          static_cast<std::int64_t>(2 * st.n));

  // Epochs shrink U by a constant factor until the leftover fits one pass.
  std::uint32_t epoch_idx = 0;
  while (!st.uncolored.empty()) {
    result.epochs.push_back(run_epoch(st, ++epoch_idx));
    if (st.uncolored.size() * static_cast<std::uint64_t>(st.delta) <= st.n) break;
  }

  // Final pass: collect every edge incident to U, then complete greedily.
  {
    std::vector<std::vector<VertexId>> incident(st.n);
    std::uint64_t collected = 0;
    stream_edges(st, [&](VertexId a, VertexId b) {
      const bool au = st.slot[a] != kNoSlot;
      const bool bu = st.slot[b] != kNoSlot;
      if (!au && !bu) return;
      if (au) incident[a].push_back(b);
      if (bu) incident[b].push_back(a);
      ++collected;
    });
    ScopedCharge final_charge(st.meter, SpaceCategory::stored_edges,
                              static_cast<std::int64_t>(2 * collected));
    for (VertexId x : st.uncolored) {
      std::vector<ColorId> taken;
      for (VertexId y : incident[x])
        if (st.chi.is_colored(y)) taken.push_back(st.chi.chi[y]);
      std::sort(taken.begin(), taken.end());
      taken.erase(std::unique(taken.begin(), taken.end()), taken.end());
      ColorId c = 0;
      for (ColorId t : taken) {
        if (t > c) break;
        if (t == c) ++c;
      }
      if (c > st.delta) throw TheoryViolation("greedy completion ran out of palette");
      st.chi.chi[x] = c;
    }
    st.uncolored.clear();
    rebuild_slots(st);
  }

  result.coloring = std::move(st.chi);
  result.delta = st.delta;
  result.passes = source.pass_count();
  result.prime = st.p;
  result.max_counter_entries = st.max_counter_entries;
  return result;
}

std::uint64_t determ_pass_formula(std::span<const EpochSummary> epochs) {
  std::uint64_t total = 1;
  for (const EpochSummary& e : epochs) total += 3ull * e.stages + 1;
  return total;
}

std::uint64_t slack_wrt(std::span<const ColorId> T, VertexId x, const PartialColoring& chi,
                        const AdjacencyGraph& graph, std::span<const ColorId> Lx) {
  if (x >= graph.vertex_count()) throw InputError("slack_wrt: vertex out of range");
  std::vector<ColorId> t_sorted(T.begin(), T.end());
  std::sort(t_sorted.begin(), t_sorted.end());
  t_sorted.erase(std::unique(t_sorted.begin(), t_sorted.end()), t_sorted.end());
  std::uint64_t avail = 0;
  for (ColorId c : Lx)
    if (std::binary_search(t_sorted.begin(), t_sorted.end(), c)) ++avail;
  std::uint64_t used = 0;
  for (VertexId y : graph.neighbors(x))
    if (chi.is_colored(y) && std::binary_search(t_sorted.begin(), t_sorted.end(), chi.chi[y]))
      ++used;
  return avail > used ? avail - used : 0;
}

double pcc_potential(std::span<const Edge> edges, const PccView& pcc) {
  double phi = 0.0;
  for (const Edge& e : edges) {
    if (pcc.chi->is_colored(e.u) || pcc.chi->is_colored(e.v)) continue;
    if (pcc.set_id[e.u] != pcc.set_id[e.v]) continue;
    if (pcc.slack[e.u] == 0 || pcc.slack[e.v] == 0)
      throw TheoryViolation("conflicting vertex with zero slack");
    phi += 1.0 / static_cast<double>(pcc.slack[e.u]) + 1.0 / static_cast<double>(pcc.slack[e.v]);
  }
  return phi;
}

double pcc_potential_vertex_form(std::span<const Edge> edges, const PccView& pcc) {
  std::vector<std::uint64_t> dconf(pcc.chi->size(), 0);
  for (const Edge& e : edges) {
    if (pcc.chi->is_colored(e.u) || pcc.chi->is_colored(e.v)) continue;
    if (pcc.set_id[e.u] != pcc.set_id[e.v]) continue;
    ++dconf[e.u];
    ++dconf[e.v];
  }
  double phi = 0.0;
  for (VertexId x = 0; x < pcc.chi->size(); ++x) {
    if (pcc.chi->is_colored(x) || dconf[x] == 0) continue;
    if (pcc.slack[x] == 0) throw TheoryViolation("conflicting vertex with zero slack");
    phi += static_cast<double>(dconf[x]) / static_cast<double>(pcc.slack[x]);
  }
  return phi;
}

}  // namespace streamcolor
