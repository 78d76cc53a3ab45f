#pragma once

#include <cstdint>
#include <vector>

#include "streamcolor/common.hpp"

namespace streamcolor {

// Arc on the cycle Z_p: the len values start, start+1, ..., start+len-1
// (mod p). len may be 0 (empty) or p (everything).
struct Arc {
  std::uint64_t start = 0;
  std::uint64_t len = 0;
};

// Intersection of two arcs: zero, one, or two disjoint arcs.
void arc_intersect(const Arc& a, const Arc& b, std::uint64_t p, std::vector<Arc>& out);

// |[0, l1) ∩ [s, s+l2)| on the cycle Z_p, for s in [0, p).
std::uint64_t box_overlap(std::uint64_t s, std::uint64_t l1, std::uint64_t l2, std::uint64_t p);

// Accumulates weighted shifted box correlations
//   F(d) += c * box_overlap((k - d) mod p, l1, l2, p)
// as sparse second-difference impulses plus the two anchor values F(0), F(1).
// finalize_into() reconstructs F over all of Z_p and feeds it to a sink.
class CorrelationAccumulator {
 public:
  explicit CorrelationAccumulator(std::uint64_t p) : p_(p) {}

  void clear() {
    impulses_.clear();
    f0_ = f1_ = 0.0;
  }

  void add(double c, std::uint64_t l1, std::uint64_t l2, std::uint64_t k);

  bool empty() const { return impulses_.empty() && f0_ == 0.0 && f1_ == 0.0; }

  // Calls sink(d, F(d)) for d = 0 .. p-1 in order.
  template <typename Sink>
  void finalize_into(Sink&& sink);

 private:
  struct Impulse {
    std::uint64_t pos;
    double value;
  };
  std::uint64_t p_;
  std::vector<Impulse> impulses_;
  double f0_ = 0.0;
  double f1_ = 0.0;
};

template <typename Sink>
void CorrelationAccumulator::finalize_into(Sink&& sink) {
  std::sort(impulses_.begin(), impulses_.end(),
            [](const Impulse& a, const Impulse& b) { return a.pos < b.pos; });
  // F(d+1) = 2 F(d) - F(d-1) + D2(d), with F(0), F(1) known.
  double prev = f0_;
  sink(std::uint64_t{0}, f0_);
  if (p_ == 1) return;
  double cur = f1_;
  sink(std::uint64_t{1}, f1_);
  std::size_t idx = 0;
  while (idx < impulses_.size() && impulses_[idx].pos < 1) ++idx;
  for (std::uint64_t d = 1; d + 1 < p_; ++d) {
    double d2 = 0.0;
    while (idx < impulses_.size() && impulses_[idx].pos == d) d2 += impulses_[idx++].value;
    const double next = 2.0 * cur - prev + d2;
    sink(d + 1, next);
    prev = cur;
    cur = next;
  }
}

}  // namespace streamcolor
