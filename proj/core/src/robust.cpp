#include "streamcolor/robust.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

namespace streamcolor {

namespace {

std::uint64_t ceil_pow(double delta, double exponent) {
  const long double v = std::pow(static_cast<long double>(delta), static_cast<long double>(exponent));
  return static_cast<std::uint64_t>(std::ceil(v - 1e-9L));
}

}  // namespace

RobustConfig RobustConfig::make(std::uint32_t n, std::uint32_t delta, double beta,
                                std::uint64_t seed) {
  if (n == 0 || delta == 0) throw UsageError("robust: n and Delta must be positive");
  if (beta < 0.0 || beta > 1.0) throw UsageError("robust: beta must lie in [0, 1]");
  RobustConfig c;
  c.n = n;
  c.delta = delta;
  c.beta = beta;
  c.seed = seed;
  c.buffer_cap = static_cast<std::uint64_t>(n) * ceil_pow(delta, beta);
  c.epochs = static_cast<std::uint32_t>(ceil_pow(delta, 1.0 - beta));
  c.slow_range = ceil_pow(delta, 2.0 - 2.0 * beta);
  c.fast_threshold = ceil_pow(delta, (1.0 + beta) / 2.0);
  c.levels = static_cast<std::uint32_t>(ceil_pow(delta, (1.0 - beta) / 2.0));
  c.fast_range = ceil_pow(delta, 3.0 * (1.0 - beta) / 2.0);
  const std::uint64_t lg = ceil_log2(n < 2 ? 2 : n);
  c.fallback = delta < lg * lg;
  return c;
}

RobustColoring::RobustColoring(const RobustConfig& config, SpaceMeter* meter)
    : cfg_(config), meter_(meter), prf_{config.seed} {
  degree_.assign(cfg_.n, 0);
  buffer_degree_.assign(cfg_.n, 0);
  sum_deg_a_.assign(cfg_.n, 0);
  sum_deg_c_.assign(cfg_.n, 0);
  if (!cfg_.fallback) {
    a_sets_.resize(cfg_.epochs);
    c_sets_.resize(cfg_.levels);
  }
  layout_.block_capacity = cfg_.fast_threshold + 5 * ceil_log2(cfg_.n < 2 ? 2 : cfg_.n) + 1;
  layout_.slow_blocks = cfg_.slow_range;
  layout_.fast_blocks = static_cast<std::uint64_t>(cfg_.levels) * cfg_.fast_range;
  if (meter_) {
    // Degree counters and the per-function seeds.
    meter_->charge(SpaceCategory::counters, static_cast<std::int64_t>(cfg_.n));
    meter_->charge(SpaceCategory::hash_descriptions,
                   static_cast<std::int64_t>(cfg_.fallback ? 0 : cfg_.epochs + cfg_.levels));
  }
}

std::uint64_t RobustColoring::h_value(std::uint32_t i, VertexId v) const {
  return prf_.eval(i, v, cfg_.slow_range);
}

std::uint64_t RobustColoring::g_value(std::uint32_t i, VertexId v) const {
  return prf_.eval(0x8000000000000000ull | i, v, cfg_.fast_range);
}

std::uint64_t RobustColoring::stored_edges() const {
  std::uint64_t total = buffer_.size() + fallback_edges_.size();
  for (const auto& s : a_sets_) total += s.size();
  for (const auto& s : c_sets_) total += s.size();
  return total;
}

void RobustColoring::process(const Edge& e) {
  if (e.u >= cfg_.n || e.v >= cfg_.n) throw InputError("robust: endpoint out of range");
  if (degree_[e.u] >= cfg_.delta || degree_[e.v] >= cfg_.delta)
    throw InputError("robust: degree cap exceeded at edge {" + std::to_string(e.u) + "," +
                     std::to_string(e.v) + "}");

  if (cfg_.fallback) {
    ++degree_[e.u];
    ++degree_[e.v];
    fallback_edges_.push_back(e);
    if (meter_) meter_->charge(SpaceCategory::stored_edges, 2);
    return;
  }

  if (buffer_.size() == cfg_.buffer_cap) {
    if (meter_) meter_->charge(SpaceCategory::stored_edges,
                               -2 * static_cast<std::int64_t>(buffer_.size()));
    buffer_.clear();
    std::fill(buffer_degree_.begin(), buffer_degree_.end(), 0);
    ++curr_;
    if (curr_ > cfg_.epochs)
      throw TheoryViolation("epoch counter exceeded the configured epoch budget");
  }
  buffer_.push_back(e);
  ++buffer_degree_[e.u];
  ++buffer_degree_[e.v];
  ++degree_[e.u];
  ++degree_[e.v];
  if (meter_) meter_->charge(SpaceCategory::stored_edges, 2);

  for (std::uint32_t i = curr_ + 1; i <= cfg_.epochs; ++i) {
    if (h_value(i, e.u) == h_value(i, e.v)) {
      a_sets_[i - 1].push_back(e);
      ++sum_deg_a_[e.u];
      ++sum_deg_a_[e.v];
      if (meter_) meter_->charge(SpaceCategory::stored_edges, 2);
    }
  }
  const std::uint32_t level =
      level_of_degree(std::max(degree_[e.u], degree_[e.v]));
  for (std::uint32_t i = level + 1; i <= cfg_.levels; ++i) {
    if (g_value(i, e.u) == g_value(i, e.v)) {
      c_sets_[i - 1].push_back(e);
      ++sum_deg_c_[e.u];
      ++sum_deg_c_[e.v];
      if (meter_) meter_->charge(SpaceCategory::stored_edges, 2);
    }
  }
}

RobustQueryResult RobustColoring::fallback_query() const {
  RobustQueryResult res;
  AdjacencyGraph g(cfg_.n, fallback_edges_);
  std::vector<VertexId> order(cfg_.n);
  for (VertexId v = 0; v < cfg_.n; ++v) order[v] = v;
  PartialColoring chi = greedy_color(g, order);
  res.colors.assign(chi.chi.begin(), chi.chi.end());
  res.slow_vertices = cfg_.n;
  return res;
}

RobustQueryResult RobustColoring::query() const {
  if (cfg_.fallback) return fallback_query();

  RobustQueryResult res;
  res.colors.assign(cfg_.n, 0);

  std::uint64_t overflow_serial = 0;
  const std::uint64_t overflow_base = layout_.total_reserved();
  const auto emit = [&](VertexId x, std::uint64_t base, std::uint64_t local) {
    if (local < layout_.block_capacity) {
      res.colors[x] = static_cast<ColorId>(base + local);
    } else {
      res.colors[x] = static_cast<ColorId>(overflow_base + overflow_serial++);
      ++res.overflow_count;
    }
  };

  // Zones by buffer degree; h_curr memoized per vertex.
  scratch_fast_.assign(cfg_.n, 0);
  scratch_h_.resize(cfg_.n);
  for (VertexId v = 0; v < cfg_.n; ++v) {
    scratch_fast_[v] = buffer_degree_[v] > cfg_.fast_threshold;
    scratch_h_[v] = h_value(curr_, v);
  }

  // Slow zone: h_curr-blocks colored greedily on A_curr ∪ B.
  {
    scratch_keys_.clear();
    for (VertexId v = 0; v < cfg_.n; ++v)
      if (!scratch_fast_[v]) scratch_keys_.push_back(scratch_h_[v] * cfg_.n + v);
    std::sort(scratch_keys_.begin(), scratch_keys_.end());
    res.slow_vertices = scratch_keys_.size();
    res.fast_vertices = cfg_.n - res.slow_vertices;

    // CSR adjacency over intra-block slow edges.
    scratch_deg_.assign(cfg_.n + 1, 0);
    const auto relevant = [&](const Edge& e) {
      return !scratch_fast_[e.u] && !scratch_fast_[e.v] && scratch_h_[e.u] == scratch_h_[e.v];
    };
    const auto count_edges = [&](const std::vector<Edge>& edges) {
      for (const Edge& e : edges)
        if (relevant(e)) {
          ++scratch_deg_[e.u + 1];
          ++scratch_deg_[e.v + 1];
        }
    };
    count_edges(a_sets_[curr_ - 1]);
    count_edges(buffer_);
    for (VertexId v = 0; v < cfg_.n; ++v) scratch_deg_[v + 1] += scratch_deg_[v];
    scratch_adj_.resize(scratch_deg_[cfg_.n]);
    scratch_fill_ = scratch_deg_;
    const auto place_edges = [&](const std::vector<Edge>& edges) {
      for (const Edge& e : edges)
        if (relevant(e)) {
          scratch_adj_[scratch_fill_[e.u]++] = e.v;
          scratch_adj_[scratch_fill_[e.v]++] = e.u;
        }
    };
    place_edges(a_sets_[curr_ - 1]);
    place_edges(buffer_);

    // Greedy within each block run, ascending vertex id; the stamp array
    // tracks colors used by already-colored same-block neighbors.
    scratch_local_.assign(cfg_.n, 0);
    scratch_mark_.assign(cfg_.n + 2, cfg_.n);
    for (const std::uint64_t key : scratch_keys_) {
      const VertexId x = static_cast<VertexId>(key % cfg_.n);
      for (std::uint32_t i = scratch_deg_[x]; i < scratch_deg_[x + 1]; ++i) {
        const VertexId y = scratch_adj_[i];
        if (y < x) scratch_mark_[scratch_local_[y]] = x;
      }
      std::uint32_t c = 0;
      while (scratch_mark_[c] == x) ++c;
      scratch_local_[x] = c;
      emit(x, layout_.slow_base(scratch_h_[x]), c);
    }
  }

  // Fast zone: (level, g_level)-blocks colored on C_level ∪ B with a
  // degeneracy+1 coloring. Fast vertices are few by construction.
  if (res.fast_vertices > 0) {
    std::vector<std::pair<std::uint64_t, VertexId>> fasts;
    fasts.reserve(res.fast_vertices);
    const auto block_key = [&](std::uint32_t level, std::uint64_t g) {
      return static_cast<std::uint64_t>(level) * cfg_.fast_range + g;
    };
    std::vector<std::uint32_t> level_of(cfg_.n, 0);
    for (VertexId v = 0; v < cfg_.n; ++v) {
      if (!scratch_fast_[v]) continue;
      const std::uint32_t level = level_of_degree(degree_[v]);
      level_of[v] = level;
      fasts.emplace_back(block_key(level, g_value(level, v)), v);
    }
    std::sort(fasts.begin(), fasts.end());
    // Bucket candidate edges by block in one scan of B and the C sets.
    std::vector<std::pair<std::uint64_t, Edge>> fedges;
    const auto consider = [&](const Edge& e, const std::uint32_t only_level) {
      if (!scratch_fast_[e.u] || !scratch_fast_[e.v]) return;
      const std::uint32_t lu = level_of[e.u];
      if (lu != level_of[e.v]) return;
      if (only_level != 0 && lu != only_level) return;
      const std::uint64_t gu = g_value(lu, e.u);
      if (gu != g_value(lu, e.v)) return;
      fedges.emplace_back(block_key(lu, gu), e);
    };
    for (const Edge& e : buffer_) consider(e, 0);
    for (std::uint32_t l = 1; l <= cfg_.levels; ++l)
      for (const Edge& e : c_sets_[l - 1]) consider(e, l);
    std::sort(fedges.begin(), fedges.end(),
              [](const auto& a, const auto& b) {
                return a.first != b.first ? a.first < b.first : a.second < b.second;
              });

    std::size_t ei = 0;
    std::size_t vi = 0;
    while (vi < fasts.size()) {
      const std::uint64_t key = fasts[vi].first;
      std::vector<VertexId> members;
      while (vi < fasts.size() && fasts[vi].first == key) members.push_back(fasts[vi++].second);
      std::unordered_map<VertexId, VertexId> index;
      for (VertexId i = 0; i < members.size(); ++i) index[members[i]] = i;
      while (ei < fedges.size() && fedges[ei].first < key) ++ei;
      std::vector<Edge> induced;
      while (ei < fedges.size() && fedges[ei].first == key) {
        const Edge& e = fedges[ei++].second;
        induced.push_back(Edge::canonical(index.at(e.u), index.at(e.v)));
      }
      std::sort(induced.begin(), induced.end());
      induced.erase(std::unique(induced.begin(), induced.end()), induced.end());
      AdjacencyGraph sub(static_cast<VertexId>(members.size()), induced);
      PartialColoring chi = degeneracy_plus_one_color(sub);
      const std::uint32_t level = static_cast<std::uint32_t>(key / cfg_.fast_range);
      const std::uint64_t g = key % cfg_.fast_range;
      const std::uint64_t base = layout_.fast_base(level, g, cfg_.fast_range);
      for (VertexId i = 0; i < members.size(); ++i) emit(members[i], base, chi.chi[i]);
    }
  }

  return res;
}

std::uint64_t RobustColoring::reserved_colors() const {
  if (cfg_.fallback) return cfg_.delta + 1;
  return layout_.total_reserved();
}

std::uint64_t RobustColoring::idealized_random_bits() const {
  if (cfg_.fallback) return 0;
  const std::uint64_t h_bits =
      static_cast<std::uint64_t>(cfg_.epochs) * cfg_.n * ceil_log2(cfg_.slow_range);
  const std::uint64_t g_bits =
      static_cast<std::uint64_t>(cfg_.levels) * cfg_.n * ceil_log2(cfg_.fast_range);
  return h_bits + g_bits;
}

PaletteBound robust_palette_bound(const RobustConfig& config) {
  PaletteBound b;
  PaletteLayout layout;
  layout.block_capacity =
      config.fast_threshold + 5 * ceil_log2(config.n < 2 ? 2 : config.n) + 1;
  layout.slow_blocks = config.slow_range;
  layout.fast_blocks = static_cast<std::uint64_t>(config.levels) * config.fast_range;
  b.reserved = layout.total_reserved();
  b.asymptotic_target =
      std::pow(static_cast<double>(config.delta), (5.0 - 3.0 * config.beta) / 2.0);
  return b;
}

}  // namespace streamcolor
