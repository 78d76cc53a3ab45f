#include "streamcolor/arcs.hpp"

#include <algorithm>

namespace streamcolor {

namespace {
// Intersection of the plain interval [s, e) with the arc starting at `start`
// of length `len`, where the arc has been unrolled to [start, start+len) on
// the line; appends the overlap to out (shifted back mod p).
void clip_segment(std::uint64_t lo, std::uint64_t hi, std::uint64_t start, std::uint64_t len,
                  std::uint64_t p, std::vector<Arc>& out) {
  const std::uint64_t a = std::max(lo, start);
  const std::uint64_t b = std::min(hi, start + len);
  if (a < b) out.push_back(Arc{a % p, b - a});
}
}  // namespace

void arc_intersect(const Arc& a, const Arc& b, std::uint64_t p, std::vector<Arc>& out) {
  out.clear();
  if (a.len == 0 || b.len == 0) return;
  if (a.len >= p) {
    out.push_back(b);
    return;
  }
  if (b.len >= p) {
    out.push_back(a);
    return;
  }
  // Unroll a to [a.start, a.start + a.len) ⊂ [0, 2p); the translates of b at
  // offsets -p, 0, +p cover that window. At most two clips are nonempty.
  const std::uint64_t lo = a.start + p;  // shift everything by +p to stay unsigned
  const std::uint64_t hi = lo + a.len;
  clip_segment(lo, hi, b.start, b.len, p, out);
  clip_segment(lo, hi, b.start + p, b.len, p, out);
  clip_segment(lo, hi, b.start + 2 * p, b.len, p, out);
}

std::uint64_t box_overlap(std::uint64_t s, std::uint64_t l1, std::uint64_t l2, std::uint64_t p) {
  if (l1 == 0 || l2 == 0) return 0;
  // Non-wrapped part of [s, s+l2): [s, min(s+l2, p)).
  const std::uint64_t e1 = std::min(s + l2, p);
  std::uint64_t total = 0;
  if (s < l1) total += std::min(e1, l1) - s;
  // Wrapped part: [0, s+l2-p).
  if (s + l2 > p) total += std::min(l1, s + l2 - p);
  return total;
}

void CorrelationAccumulator::add(double c, std::uint64_t l1, std::uint64_t l2, std::uint64_t k) {
  if (l1 == 0 || l2 == 0 || c == 0.0) return;
  f0_ += c * static_cast<double>(box_overlap(k % p_, l1, l2, p_));
  f1_ += c * static_cast<double>(box_overlap((k + p_ - 1) % p_, l1, l2, p_));
  if (p_ <= 2) return;  // anchors alone determine F
  // Second difference of s -> box_overlap(s, l1, l2): +1 at -l2, -1 at
  // -l2+m, -1 at M-l2, +1 at l1, with m=min(l1,l2), M=max(l1,l2).
  // Under d = (k - s) mod p the impulse positions map with equal signs.
  const std::int64_t m = static_cast<std::int64_t>(std::min(l1, l2));
  const std::int64_t M = static_cast<std::int64_t>(std::max(l1, l2));
  const std::int64_t sl1 = static_cast<std::int64_t>(l1);
  const std::int64_t sl2 = static_cast<std::int64_t>(l2);
  const auto at = [&](std::int64_t s_pos) {
    std::int64_t d = (static_cast<std::int64_t>(k % p_) - s_pos) % static_cast<std::int64_t>(p_);
    if (d < 0) d += static_cast<std::int64_t>(p_);
    return static_cast<std::uint64_t>(d);
  };
  impulses_.push_back({at(-sl2), c});
  impulses_.push_back({at(-sl2 + m), -c});
  impulses_.push_back({at(M - sl2), -c});
  impulses_.push_back({at(sl1), c});
}

}  // namespace streamcolor
