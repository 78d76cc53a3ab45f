#include "streamcolor/gw_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace streamcolor {

GwSampler GwSampler::build(std::uint64_t p, std::size_t slots, double inflation) {
  GwSampler s;
  s.p_ = p;
  s.inflation_ = inflation;
  s.offsets_.assign(slots + 1, 0);
  return s;
}

void GwSampler::fill_slot(std::size_t slot,
                          std::span<const std::pair<std::uint64_t, std::uint64_t>> slacks) {
  if (slot != fill_cursor_)
    throw UsageError("GwSampler::fill_slot: slots must be filled in order");
  ++fill_cursor_;
  std::uint64_t total = 0;
  for (const auto& [pattern, slack] : slacks) total += slack;
  if (total == 0) throw TheoryViolation("GwSampler: all-zero slack vector");
  std::uint64_t covered = 0;
  for (const auto& [pattern, slack] : slacks) {
    if (slack == 0 || covered >= p_) continue;
    const double w = static_cast<double>(slack) / static_cast<double>(total);
    std::uint64_t len =
        static_cast<std::uint64_t>(std::floor(static_cast<double>(p_) * w * inflation_));
    len = std::min(len, p_ - covered);
    if (len == 0) continue;
    entries_.push_back(Entry{pattern, covered, covered + len});
    covered += len;
  }
  if (covered < p_)
    throw TheoryViolation("GwSampler: coverage shortfall (" + std::to_string(covered) + " of " +
                          std::to_string(p_) + "); prime below the coverage precondition");
  offsets_[slot + 1] = entries_.size();
}

std::uint64_t GwSampler::pattern_of(std::size_t slot, std::uint64_t r) const {
  const auto es = entries(slot);
  // Binary search over interval ends.
  std::size_t lo = 0, hi = es.size();
  while (lo + 1 < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (es[mid].begin <= r)
      lo = mid;
    else
      hi = mid;
  }
  return es[lo].pattern;
}

Arc GwSampler::interval_of(std::size_t slot, std::uint64_t pattern) const {
  const auto es = entries(slot);
  auto it = std::lower_bound(es.begin(), es.end(), pattern,
                             [](const Entry& e, std::uint64_t pv) { return e.pattern < pv; });
  if (it == es.end() || it->pattern != pattern) return Arc{0, 0};
  return Arc{it->begin, it->end - it->begin};
}

}  // namespace streamcolor
