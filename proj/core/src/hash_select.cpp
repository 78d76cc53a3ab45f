#include "streamcolor/hash_select.hpp"

#include <algorithm>

namespace streamcolor {

std::uint64_t modpow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, mod);
    base = mulmod(base, base, mod);
    exp >>= 1;
  }
  return r;
}

namespace {

// Pass A: buffers one correlation record per (edge, pattern), grouped by the
// endpoint difference d = (v - u) mod p. For a fixed d, the contribution to
// part a is a function of delta = a*d mod p, reconstructed once per group and
// scattered into the part accumulators along the stride d^{-1}.
struct PartSink final : HashSelector::Sink {
  struct Record {
    std::uint64_t d;
    std::uint64_t l1;
    std::uint64_t l2;
    std::uint64_t k;
    double cost;
  };

  std::uint64_t p;
  std::uint64_t cur_d = 0;
  std::vector<Record> records;

  explicit PartSink(std::uint64_t prime) : p(prime) {}

  void begin_edge(VertexId u, VertexId v) override {
    // Vertex ids sit below p, so the difference needs no reduction first.
    cur_d = (std::uint64_t{v} + p - u) % p;
    if (cur_d == 0) throw TheoryViolation("conflict edge with equal endpoints");
  }

  void add(const Arc& iu, const Arc& iv, double cost) override {
    if (iu.len == 0 || iv.len == 0 || cost == 0.0) return;
    const std::uint64_t k = (iv.start + p - iu.start) % p;
    records.push_back({cur_d, iu.len, iv.len, k, cost});
  }
};

// Pass B: for the fixed coefficient a, the b-values making both endpoints
// land in their intervals form at most two arcs; accumulate costs over those
// arcs with a difference array.
struct FnSink final : HashSelector::Sink {
  std::uint64_t p;
  std::uint64_t a;
  std::uint64_t shift_u = 0, shift_v = 0;
  std::vector<double> diff;
  double base0 = 0.0;
  std::vector<Arc> scratch;

  FnSink(std::uint64_t prime, std::uint64_t coeff)
      : p(prime), a(coeff), diff(prime + 1, 0.0) {}

  void begin_edge(VertexId u, VertexId v) override {
    shift_u = mulmod(a, u, p);
    shift_v = mulmod(a, v, p);
  }

  void add(const Arc& iu, const Arc& iv, double cost) override {
    if (iu.len == 0 || iv.len == 0 || cost == 0.0) return;
    const Arc bu{(iu.start + p - shift_u) % p, iu.len};
    const Arc bv{(iv.start + p - shift_v) % p, iv.len};
    arc_intersect(bu, bv, p, scratch);
    for (const Arc& arc : scratch) {
      const std::uint64_t end = arc.start + arc.len;
      if (end <= p) {
        diff[arc.start] += cost;
        diff[end] -= cost;
      } else {
        diff[arc.start] += cost;
        diff[p] -= cost;
        base0 += cost;
        diff[end - p] -= cost;
      }
    }
  }
};

}  // namespace

std::vector<double> HashSelector::compute_part_sums(
    const std::function<void(Sink&)>& enumerate) {
  PartSink sink(p_);
  enumerate(sink);

  ScopedCharge acc_charge(meter_, SpaceCategory::accumulators,
                          static_cast<std::int64_t>(p_));
  ScopedCharge buf_charge(meter_, SpaceCategory::accumulators,
                          static_cast<std::int64_t>(sink.records.size() * 5));

  std::vector<double> part(p_, 0.0);
  std::sort(sink.records.begin(), sink.records.end(),
            [](const auto& x, const auto& y) { return x.d < y.d; });
  CorrelationAccumulator corr(p_);
  std::size_t i = 0;
  while (i < sink.records.size()) {
    const std::uint64_t d = sink.records[i].d;
    corr.clear();
    while (i < sink.records.size() && sink.records[i].d == d) {
      const auto& r = sink.records[i];
      corr.add(r.cost, r.l1, r.l2, r.k);
      ++i;
    }
    const std::uint64_t dinv = modpow(d, p_ - 2, p_);
    // delta = a*d walks all residues as a does; invert the stride.
    std::uint64_t a = 0;
    corr.finalize_into([&](std::uint64_t /*delta*/, double value) {
      part[a] += value;
      a += dinv;
      if (a >= p_) a -= p_;
    });
  }
  return part;
}

std::vector<double> HashSelector::compute_fn_values(
    std::uint64_t a, const std::function<void(Sink&)>& enumerate) {
  FnSink sink(p_, a);
  ScopedCharge acc_charge(meter_, SpaceCategory::accumulators,
                          static_cast<std::int64_t>(p_));
  enumerate(sink);
  std::vector<double> vals(p_, 0.0);
  double run = sink.base0;
  // diff[0] counts arcs that begin at 0; base0 already covers wrapped arcs.
  for (std::uint64_t b = 0; b < p_; ++b) {
    run += sink.diff[b];
    vals[b] = run;
  }
  return vals;
}

HashSelector::Result HashSelector::select(const std::function<void(Sink&)>& enumerate) {
  const std::vector<double> part = compute_part_sums(enumerate);
  std::uint64_t best_a = 0;
  for (std::uint64_t a = 1; a < p_; ++a)
    if (part[a] < part[best_a]) best_a = a;

  const std::vector<double> vals = compute_fn_values(best_a, enumerate);
  std::uint64_t best_b = 0;
  for (std::uint64_t b = 1; b < p_; ++b)
    if (vals[b] < vals[best_b]) best_b = b;

  Result res;
  res.fn = CarterWegman::Fn{best_a, best_b};
  res.part_sum = part[best_a];
  res.fn_value = vals[best_b];
  return res;
}

std::vector<double> HashSelector::part_sums_for_test(
    const std::function<void(Sink&)>& enumerate) {
  return compute_part_sums(enumerate);
}

}  // namespace streamcolor
