#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "streamcolor/arcs.hpp"
#include "streamcolor/common.hpp"

namespace streamcolor {

// Maps a uniform value r in [0, p) to a pattern, per vertex, approximating
// the slack-proportional distribution: pattern j receives the consecutive
// block of floor(p * w_j * inflation) values, blocks laid out in ascending
// pattern order and truncated once all p values are covered. Only patterns
// with positive weight receive mass.
class GwSampler {
 public:
  struct Entry {
    std::uint64_t pattern;
    std::uint64_t begin;  // interval [begin, end) of r-values
    std::uint64_t end;
  };

  GwSampler() = default;

  // One vertex slot per element of `ids`; weights are given as integer
  // slacks, normalized internally (w_j = slack_j / sum).
  static GwSampler build(std::uint64_t p, std::size_t slots, double inflation);

  // Fills the slot for local index `slot` from (pattern, slack) pairs with
  // patterns strictly ascending. Throws TheoryViolation on coverage
  // shortfall (means p was below the 8 n log n precondition).
  void fill_slot(std::size_t slot, std::span<const std::pair<std::uint64_t, std::uint64_t>> slacks);

  std::uint64_t pattern_of(std::size_t slot, std::uint64_t r) const;

  std::span<const Entry> entries(std::size_t slot) const {
    return {entries_.data() + offsets_[slot], offsets_[slot + 1] - offsets_[slot]};
  }

  // Interval of r-values directed to `pattern` (empty arc if none).
  Arc interval_of(std::size_t slot, std::uint64_t pattern) const;

  std::uint64_t p() const { return p_; }
  double inflation() const { return inflation_; }
  std::size_t total_entries() const { return entries_.size(); }

 private:
  std::uint64_t p_ = 0;
  double inflation_ = 1.0;
  std::vector<Entry> entries_;
  std::vector<std::size_t> offsets_;
  std::size_t fill_cursor_ = 0;
};

}  // namespace streamcolor
