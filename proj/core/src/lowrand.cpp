#include "streamcolor/lowrand.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace streamcolor {

LowRandConfig LowRandConfig::make(std::uint32_t n, std::uint32_t delta, std::uint64_t seed) {
  if (n < 2 || delta == 0) throw UsageError("lowrand: need n >= 2 and Delta >= 1");
  LowRandConfig c;
  c.n = n;
  c.delta = delta;
  c.seed = seed;
  c.p_repeats = static_cast<std::uint32_t>(
      std::ceil(10.0 * std::log2(static_cast<double>(n)) - 1e-9));
  std::uint32_t lg = 0;
  while ((std::uint64_t{2} << lg) <= delta) ++lg;
  c.ell = std::uint64_t{1} << lg;
  c.out_bits = 2 * lg;
  c.field_width = std::max(ceil_log2(n), c.out_bits);
  c.d_cap = 7ull * n / delta + 1;
  return c;
}

LowRandColoring::LowRandColoring(const LowRandConfig& config, SpaceMeter* meter)
    : cfg_(config), meter_(meter) {
  degree_.assign(cfg_.n, 0);
  const std::size_t total = static_cast<std::size_t>(cfg_.delta) * cfg_.p_repeats;
  d_sets_.resize(total);
  d_live_.assign(total, true);
  const Gf2Field& field = Gf2Field::get(cfg_.field_width);
  Rng rng(cfg_.seed);
  fns_.reserve(total);
  for (std::size_t i = 0; i < total; ++i)
    fns_.push_back(FourIndepHash::sample(rng, field, cfg_.out_bits));
  log_n_pad_ = ceil_log2(cfg_.n);
  use_table_ = cfg_.out_bits <= 16 && (total << log_n_pad_) <= (std::size_t{1} << 26);
  if (use_table_) {
    table_.assign(total << log_n_pad_, 0);
    for (std::size_t f = 0; f < total; ++f)
      for (VertexId v = 0; v < cfg_.n; ++v)
        table_[(f << log_n_pad_) | v] = static_cast<std::uint16_t>(fns_[f].eval(v));
  }
  if (meter_) {
    // Seeds are the random state; the evaluation table is derived cache.
    meter_->charge(SpaceCategory::hash_descriptions, static_cast<std::int64_t>(total * 4));
    meter_->charge(SpaceCategory::derived_cache, static_cast<std::int64_t>(table_.size()));
    meter_->charge(SpaceCategory::counters, static_cast<std::int64_t>(cfg_.n));
  }
}

void LowRandColoring::process(const Edge& e) {
  if (e.u >= cfg_.n || e.v >= cfg_.n) throw InputError("lowrand: endpoint out of range");
  if (degree_[e.u] >= cfg_.delta || degree_[e.v] >= cfg_.delta)
    throw InputError("lowrand: degree cap exceeded");
  if (buffer_.size() == cfg_.n) {
    if (meter_) meter_->charge(SpaceCategory::stored_edges,
                               -2 * static_cast<std::int64_t>(buffer_.size()));
    buffer_.clear();
    ++curr_;
    if (curr_ > cfg_.delta)
      throw TheoryViolation("lowrand: epoch counter passed Delta despite the degree cap");
  }
  buffer_.push_back(e);
  ++degree_[e.u];
  ++degree_[e.v];
  if (meter_) meter_->charge(SpaceCategory::stored_edges, 2);

  const std::uint64_t cap_lhs_limit = 7ull * cfg_.n;  // insert while |D| * Delta < 7n
  for (std::uint32_t i = curr_ + 1; i <= cfg_.delta; ++i) {
    if (i <= curr_) ++phase_write_violations_;
    for (std::uint32_t j = 1; j <= cfg_.p_repeats; ++j) {
      const std::size_t slot = idx(i, j);
      if (hash(i, j, e.u) != hash(i, j, e.v)) continue;
      if (!d_live_[slot]) continue;
      auto& d = d_sets_[slot];
      if (d.size() * static_cast<std::uint64_t>(cfg_.delta) < cap_lhs_limit) {
        d.push_back(e);
        max_d_size_ = std::max<std::uint64_t>(max_d_size_, d.size());
        if (meter_) meter_->charge(SpaceCategory::stored_edges, 2);
      } else {
        d_live_[slot] = false;
        if (meter_) meter_->charge(SpaceCategory::stored_edges,
                                   -2 * static_cast<std::int64_t>(d.size()));
        d.clear();
        d.shrink_to_fit();
      }
    }
  }
}

LowRandQueryResult LowRandColoring::query() const {
  LowRandQueryResult res;
  if (curr_ > cfg_.delta) ++phase_read_violations_;
  std::uint32_t k = 0;
  for (std::uint32_t j = 1; j <= cfg_.p_repeats; ++j) {
    if (d_live_[idx(curr_, j)]) {
      k = j;
      break;
    }
  }
  if (k == 0) {
    res.failed = true;
    return res;
  }
  res.chosen_j = k;

  // Greedy coloring of D_{curr,k} ∪ B, ascending vertex order. The two edge
  // sets are disjoint (D holds earlier epochs only), so no deduplication.
  const std::vector<Edge>& d = d_sets_[idx(curr_, k)];
  const std::uint32_t n = cfg_.n;
  scratch_offsets_.assign(n + 1, 0);
  const auto count_edge = [&](const Edge& e) {
    ++scratch_offsets_[e.u + 1];
    ++scratch_offsets_[e.v + 1];
  };
  for (const Edge& e : d) count_edge(e);
  for (const Edge& e : buffer_) count_edge(e);
  for (std::uint32_t v = 0; v < n; ++v) scratch_offsets_[v + 1] += scratch_offsets_[v];
  scratch_neighbors_.resize(scratch_offsets_[n]);
  scratch_fill_ = scratch_offsets_;
  const auto place_edge = [&](const Edge& e) {
    scratch_neighbors_[scratch_fill_[e.u]++] = e.v;
    scratch_neighbors_[scratch_fill_[e.v]++] = e.u;
  };
  for (const Edge& e : d) place_edge(e);
  for (const Edge& e : buffer_) place_edge(e);

  res.chi.assign(n, 0);
  res.colors.assign(n, 0);
  scratch_mark_.assign(cfg_.delta + 2, n);  // stamp = coloring vertex id
  const std::uint64_t range = cfg_.ell * cfg_.ell;
  const std::size_t base = use_table_ ? (idx(curr_, k) << log_n_pad_) : 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint32_t i = scratch_offsets_[v]; i < scratch_offsets_[v + 1]; ++i) {
      const VertexId y = scratch_neighbors_[i];
      if (y < v) scratch_mark_[res.chi[y]] = v;
    }
    std::uint32_t c = 0;
    while (scratch_mark_[c] == v) ++c;
    if (c > cfg_.delta) throw TheoryViolation("greedy exceeded Delta+1 colors");
    res.chi[v] = c;
    res.colors[v] = static_cast<ColorId>(
        c * range + (use_table_ ? table_[base | v] : fns_[idx(curr_, k)].eval(v)));
  }
  return res;
}

std::uint64_t LowRandColoring::hash(std::uint32_t i, std::uint32_t j, VertexId v) const {
  const std::size_t slot = idx(i, j);
  if (use_table_) return table_[(slot << log_n_pad_) | v];
  return fns_[slot].eval(v);
}

std::uint64_t LowRandColoring::stored_edges() const {
  std::uint64_t total = buffer_.size();
  for (const auto& d : d_sets_) total += d.size();
  return total;
}

LowRandColoring::RandomnessAudit LowRandColoring::randomness_audit() const {
  RandomnessAudit a;
  a.seed_bits = static_cast<std::uint64_t>(cfg_.delta) * cfg_.p_repeats * 4 * cfg_.field_width;
  a.state_words = 2 * stored_edges() + cfg_.n + 2;
  a.table_cache_words = table_.size();
  return a;
}

}  // namespace streamcolor
