#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "streamcolor/determ.hpp"
#include "streamcolor/graph.hpp"
#include "streamcolor/stream.hpp"

namespace streamcolor {

// (degree+1)-list-coloring over an arbitrary color universe. The epoch and
// hash-selection structure matches the (Delta+1) algorithm; the bit-block
// subcubes are replaced by adaptively selected partitions of the universe,
// chosen per stage by four passes of mean-refinement over a 2-universal
// partition family, plus one final stage over singletons driven by a
// per-candidate availability bit.

struct ListColorOptions {
  std::uint32_t n = 0;
  std::optional<std::uint32_t> delta;  // validated against, or discovered in, the setup pass
};

struct ListStageSnapshot {
  std::uint32_t epoch = 0;
  std::uint32_t stage = 0;  // 1-based among adaptive stages
  std::uint32_t k = 0;
  std::uint64_t s = 0;  // parts per partition
  std::uint64_t part_a = 0, part_b = 0;
  std::int64_t selected_cost = 0;   // sum over U of the chosen partition's excess
  std::int64_t lp_minus1_before = 0;
  std::int64_t lp_minus1_after = 0;
};

struct ListEpochSummary {
  std::uint32_t epoch = 0;
  std::uint64_t u_before = 0;
  std::uint64_t u_after = 0;
  std::uint64_t f_size = 0;
  std::uint32_t k = 0;
  std::uint32_t adaptive_stages = 0;
  std::uint64_t final_candidates = 0;  // sum |L_x ∩ P_x| entering the last stage
};

struct ListColorHooks {
  std::function<void(const ListStageSnapshot&)> on_stage_end;
  std::function<void(const ListEpochSummary&)> on_epoch_end;
};

struct ListColorResult {
  PartialColoring coloring;
  std::uint32_t delta = 0;
  std::uint64_t passes = 0;
  std::uint64_t universe = 0;        // colors live in [0, universe)
  std::uint64_t partition_prime = 0; // prime >= universe behind the family
  std::uint64_t cw_prime = 0;
  std::vector<ListEpochSummary> epochs;
};

class ListColoring {
 public:
  static ListColorResult run(MultiPassSource& source, const ListColorOptions& options,
                             SpaceMeter* meter = nullptr, const ListColorHooks* hooks = nullptr);
};

// max over parts of (|S ∩ part| - 1), clamped at zero; 0 for empty S.
// Partition member: color c belongs to part ((a*c + b) mod p) mod s.
std::int64_t partition_cost(std::uint64_t a, std::uint64_t b, std::uint64_t p, std::uint64_t s,
                            std::span<const ColorId> colors);

}  // namespace streamcolor
