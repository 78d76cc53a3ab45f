#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "streamcolor/graph.hpp"
#include "streamcolor/hashing.hpp"
#include "streamcolor/stream.hpp"

namespace streamcolor {

// Adversarially robust O(Delta^3)-coloring whose total footprint, including
// the random bits, stays within n polylog n. Randomness is P = ceil(10 log n)
// exactly-4-independent hash functions per epoch, each described by four
// GF(2^w) coefficients.
struct LowRandConfig {
  std::uint32_t n = 0;
  std::uint32_t delta = 0;
  std::uint64_t seed = 0;

  std::uint32_t p_repeats = 0;   // P = ceil(10 log2 n)
  std::uint64_t ell = 0;         // greatest power of two <= Delta
  std::uint32_t out_bits = 0;    // log2(ell^2)
  std::uint32_t field_width = 0; // w = ceil(log2 max(n, ell^2))
  std::uint64_t d_cap = 0;       // floor(7n / Delta) + 1 transient max

  static LowRandConfig make(std::uint32_t n, std::uint32_t delta, std::uint64_t seed);
};

struct LowRandQueryResult {
  bool failed = false;                   // all D_{curr, j} invalidated
  std::uint32_t chosen_j = 0;            // 1-based index of the live set used
  std::vector<ColorId> colors;           // flattened (chi, h) pair per vertex
  std::vector<std::uint32_t> chi;        // first coordinate, < Delta + 2
};

class LowRandColoring {
 public:
  LowRandColoring(const LowRandConfig& config, SpaceMeter* meter = nullptr);

  void process(const Edge& e);
  LowRandQueryResult query() const;

  const LowRandConfig& config() const { return cfg_; }
  std::uint64_t color_space() const {
    return (static_cast<std::uint64_t>(cfg_.delta) + 1) * cfg_.ell * cfg_.ell;
  }

  struct RandomnessAudit {
    std::uint64_t seed_bits = 0;       // Delta * P * 4w
    std::uint64_t state_words = 0;     // D sets + buffer + counters
    std::uint64_t table_cache_words = 0;
  };
  RandomnessAudit randomness_audit() const;

  std::uint32_t current_epoch() const { return curr_; }
  bool d_live(std::uint32_t i, std::uint32_t j) const { return d_live_[idx(i, j)]; }
  const std::vector<Edge>& d_set(std::uint32_t i, std::uint32_t j) const {
    return d_sets_[idx(i, j)];
  }
  const std::vector<Edge>& buffer() const { return buffer_; }
  std::uint64_t hash(std::uint32_t i, std::uint32_t j, VertexId v) const;
  std::uint64_t max_d_size_seen() const { return max_d_size_; }
  std::uint64_t stored_edges() const;
  std::uint32_t degree(VertexId v) const { return degree_[v]; }

  // Phase-separation instrumentation: a D set may only be written while the
  // epoch counter is below its index and only read when equal to it.
  std::uint64_t phase_write_violations() const { return phase_write_violations_; }
  std::uint64_t phase_read_violations() const { return phase_read_violations_; }

 private:
  LowRandConfig cfg_;
  SpaceMeter* meter_;
  std::uint32_t curr_ = 1;
  std::vector<Edge> buffer_;
  std::vector<std::vector<Edge>> d_sets_;
  std::vector<bool> d_live_;
  std::vector<std::uint32_t> degree_;
  std::vector<FourIndepHash> fns_;
  // Memoized evaluations, flagged separately by the meter: a time/space
  // trade the audit reports as derived cache, not as random state.
  std::vector<std::uint16_t> table_;
  bool use_table_ = false;
  std::uint32_t log_n_pad_ = 0;
  std::uint64_t max_d_size_ = 0;
  std::uint64_t phase_write_violations_ = 0;
  mutable std::uint64_t phase_read_violations_ = 0;
  // Query scratch, reused across calls.
  mutable std::vector<std::uint32_t> scratch_offsets_;
  mutable std::vector<std::uint32_t> scratch_fill_;
  mutable std::vector<VertexId> scratch_neighbors_;
  mutable std::vector<std::uint32_t> scratch_mark_;

  std::size_t idx(std::uint32_t i, std::uint32_t j) const {
    return static_cast<std::size_t>(i - 1) * cfg_.p_repeats + (j - 1);
  }
};

}  // namespace streamcolor
