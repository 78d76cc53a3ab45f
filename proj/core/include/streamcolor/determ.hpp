#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "streamcolor/graph.hpp"
#include "streamcolor/gw_sampler.hpp"
#include "streamcolor/hash_select.hpp"
#include "streamcolor/stream.hpp"

namespace streamcolor {

// Deterministic multipass (Delta+1)-coloring.
//
// The run proceeds in epochs; each epoch refines a partially committed
// coloring through stages that fix k more low-order bits of every uncolored
// vertex's proposed color subcube, steering the refinement with a hash
// function selected in two extra passes so the conflict potential stays
// bounded. The epoch ends by committing proposed colors on an independent
// set of the conflict graph, shrinking the uncolored set by at least a third.

struct DetermOptions {
  std::uint32_t n = 0;
  std::optional<std::uint32_t> delta;  // discovered with one extra pass when absent
};

// Guaranteed epoch shrink factor: |U'| <= kEpochShrink * |U|. Fixed by the
// independent-set bound; read-only.
inline constexpr double kEpochShrink = 2.0 / 3.0;

// State exposed to observers at the end of a stage. Pointers refer to
// internal buffers that stay valid only during the callback.
struct StageSnapshot {
  std::uint32_t epoch = 0;        // 1-based
  std::uint32_t stage = 0;        // 1-based within the epoch
  std::uint32_t k_epoch = 0;      // bits per regular stage
  std::uint32_t k_stage = 0;      // bits fixed by this stage
  std::uint32_t b = 0;            // total bits per color
  std::uint32_t fixed_before = 0;
  std::uint32_t fixed_after = 0;
  std::uint64_t counter_entries = 0;  // |U| * 2^{k_stage}
  std::uint64_t p = 0;
  CarterWegman::Fn chosen;
  double part_sum = 0.0;
  double fn_value = 0.0;
  const std::vector<VertexId>* uncolored = nullptr;       // sorted U
  std::vector<std::uint64_t> pre_pattern;                  // per-slot, before the shrink
  const std::vector<std::uint64_t>* post_pattern = nullptr;
  const std::vector<std::uint64_t>* slack_table = nullptr;  // flat [slot << k_stage | j]
  const std::vector<std::uint64_t>* post_slack = nullptr;   // s_x after the shrink
  const GwSampler* gw = nullptr;
};

struct EpochSummary {
  std::uint32_t epoch = 0;
  std::uint64_t u_before = 0;
  std::uint64_t u_after = 0;
  std::uint64_t f_size = 0;
  std::uint32_t k = 0;
  std::uint32_t stages = 0;
};

struct DetermHooks {
  std::function<void(std::uint32_t epoch, const std::vector<VertexId>& uncolored)> on_epoch_begin;
  std::function<void(const StageSnapshot&)> on_stage_end;
  // F is the set of conflicting proposed edges collected at the epoch end;
  // proposed maps each slot of `uncolored` to its proposed color.
  std::function<void(const EpochSummary&, const std::vector<VertexId>& uncolored,
                     const std::vector<std::uint64_t>& proposed, const std::vector<Edge>& f_edges,
                     const std::vector<VertexId>& committed)>
      on_epoch_end;
};

struct DetermResult {
  PartialColoring coloring;
  std::uint32_t delta = 0;
  bool delta_discovered = false;
  std::uint64_t passes = 0;
  std::uint64_t prime = 0;
  std::uint64_t max_counter_entries = 0;
  std::vector<EpochSummary> epochs;
};

class DetermColoring {
 public:
  static DetermResult run(MultiPassSource& source, const DetermOptions& options,
                          SpaceMeter* meter = nullptr, const DetermHooks* hooks = nullptr);
};

// Closed-form pass count: 1 + sum over epochs of (3 * stages_r + 1).
std::uint64_t determ_pass_formula(std::span<const EpochSummary> epochs);

// Slack of x with respect to the color set T: colors of T available in Lx
// minus the occurrences of T-colors among already-colored neighbors,
// clamped at zero.
std::uint64_t slack_wrt(std::span<const ColorId> T, VertexId x, const PartialColoring& chi,
                        const AdjacencyGraph& graph, std::span<const ColorId> Lx);

// Potential of a partially committed coloring. Uncolored vertices carry a
// set id (P_x = P_y iff ids are equal) and a slack value, both indexed by
// vertex id.
struct PccView {
  const PartialColoring* chi = nullptr;
  std::span<const std::uint64_t> set_id;
  std::span<const std::uint64_t> slack;
};

// Edge-sum form: sum of (1/s_x + 1/s_y) over uncolored conflicting edges.
double pcc_potential(std::span<const Edge> edges, const PccView& pcc);
// Vertex-sum form: sum of dconf(x) / s_x; equal to the edge-sum form.
double pcc_potential_vertex_form(std::span<const Edge> edges, const PccView& pcc);

}  // namespace streamcolor
