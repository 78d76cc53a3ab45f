#pragma once

#include <cstdint>
#include <vector>

#include "streamcolor/graph.hpp"
#include "streamcolor/hashing.hpp"
#include "streamcolor/stream.hpp"

namespace streamcolor {

// Single-pass adversarially robust coloring built from buffered epochs,
// degree levels, and monochromatic-edge sketches. beta trades space for
// colors: O(n * Delta^beta) stored words against a palette of
// O(Delta^{(5-3*beta)/2}) colors. beta = 0 is the base algorithm.
struct RobustConfig {
  std::uint32_t n = 0;
  std::uint32_t delta = 0;
  double beta = 0.0;
  std::uint64_t seed = 0;

  std::uint64_t buffer_cap = 0;     // n * Delta^beta
  std::uint32_t epochs = 0;         // ceil(Delta^{1-beta})
  std::uint64_t slow_range = 0;     // ceil(Delta^{2-2beta})
  std::uint64_t fast_threshold = 0; // ceil(Delta^{(1+beta)/2})
  std::uint32_t levels = 0;         // ceil(Delta^{(1-beta)/2})
  std::uint64_t fast_range = 0;     // ceil(Delta^{3(1-beta)/2})
  bool fallback = false;            // Delta below log^2 n: store and color offline

  static RobustConfig make(std::uint32_t n, std::uint32_t delta, double beta, std::uint64_t seed);
};

// Disjoint color ranges per block. Every slow block c and fast block (l, c)
// owns `block_capacity` consecutive ids; colorings that exceed a block's
// capacity spill into unique overflow ids past the reserved range (flagged,
// never improper).
struct PaletteLayout {
  std::uint64_t block_capacity = 0;
  std::uint64_t slow_blocks = 0;
  std::uint64_t fast_blocks = 0;  // levels * fast_range

  std::uint64_t slow_base(std::uint64_t c) const { return c * block_capacity; }
  std::uint64_t fast_base(std::uint32_t level, std::uint64_t c, std::uint64_t fast_range) const {
    return (slow_blocks + (static_cast<std::uint64_t>(level) - 1) * fast_range + c) *
           block_capacity;
  }
  std::uint64_t total_reserved() const { return (slow_blocks + fast_blocks) * block_capacity; }
};

struct RobustQueryResult {
  std::vector<ColorId> colors;
  std::uint64_t overflow_count = 0;  // vertices pushed past the reserved range
  std::uint64_t slow_vertices = 0;
  std::uint64_t fast_vertices = 0;
};

class RobustColoring {
 public:
  RobustColoring(const RobustConfig& config, SpaceMeter* meter = nullptr);

  void process(const Edge& e);
  RobustQueryResult query() const;

  const RobustConfig& config() const { return cfg_; }
  const PaletteLayout& layout() const { return layout_; }
  std::uint64_t reserved_colors() const;

  // Oracle-randomness accounting: idealized table bits (n * log2(range) per
  // function) vs the actual seed bits driving the keyed evaluations.
  std::uint64_t idealized_random_bits() const;

  std::uint64_t h_value(std::uint32_t i, VertexId v) const;  // i in [1, epochs]
  std::uint64_t g_value(std::uint32_t i, VertexId v) const;  // i in [1, levels]

  std::uint32_t current_epoch() const { return curr_; }
  const std::vector<Edge>& buffer() const { return buffer_; }
  const std::vector<Edge>& a_set(std::uint32_t i) const { return a_sets_[i - 1]; }
  const std::vector<Edge>& c_set(std::uint32_t i) const { return c_sets_[i - 1]; }
  std::uint32_t degree(VertexId v) const { return degree_[v]; }
  std::uint32_t buffer_degree(VertexId v) const { return buffer_degree_[v]; }
  std::uint64_t stored_edges() const;
  std::uint32_t level_of_degree(std::uint64_t d) const {
    return static_cast<std::uint32_t>((d + cfg_.fast_threshold - 1) / cfg_.fast_threshold);
  }
  bool fallback_mode() const { return cfg_.fallback; }

  // Sum over i of deg_{A_i}(v) / deg_{C_i}(v), for the tail-bound checks.
  std::uint64_t sum_deg_a(VertexId v) const { return sum_deg_a_[v]; }
  std::uint64_t sum_deg_c(VertexId v) const { return sum_deg_c_[v]; }

 private:
  RobustConfig cfg_;
  PaletteLayout layout_;
  SpaceMeter* meter_;
  KeyedPrf prf_;
  std::uint32_t curr_ = 1;
  std::vector<Edge> buffer_;
  std::vector<std::uint32_t> degree_;
  std::vector<std::uint32_t> buffer_degree_;
  std::vector<std::vector<Edge>> a_sets_;
  std::vector<std::vector<Edge>> c_sets_;
  std::vector<std::uint64_t> sum_deg_a_;
  std::vector<std::uint64_t> sum_deg_c_;
  std::vector<Edge> fallback_edges_;

  // Query scratch, reused across calls.
  mutable std::vector<std::uint8_t> scratch_fast_;
  mutable std::vector<std::uint64_t> scratch_h_;
  mutable std::vector<std::uint64_t> scratch_keys_;
  mutable std::vector<std::uint32_t> scratch_deg_;
  mutable std::vector<std::uint32_t> scratch_fill_;
  mutable std::vector<VertexId> scratch_adj_;
  mutable std::vector<std::uint32_t> scratch_local_;
  mutable std::vector<std::uint32_t> scratch_mark_;

  RobustQueryResult fallback_query() const;
};

// Reserved palette size for a configuration, next to the asymptotic target
// Delta^{(5-3*beta)/2}.
struct PaletteBound {
  std::uint64_t reserved = 0;
  double asymptotic_target = 0.0;
};
PaletteBound robust_palette_bound(const RobustConfig& config);

}  // namespace streamcolor
