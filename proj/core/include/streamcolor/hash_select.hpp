#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "streamcolor/arcs.hpp"
#include "streamcolor/common.hpp"
#include "streamcolor/hashing.hpp"
#include "streamcolor/stream.hpp"

namespace streamcolor {

// Shared two-pass selection of an approximately potential-minimizing hash
// function from the Carter-Wegman family over F_p.
//
// Pass A computes, for every part (all functions sharing the coefficient a),
// the exact sum over the part of the candidate potential, and keeps the
// minimizing part. Pass B computes the candidate potential of every function
// in that part and returns the minimizer. Ties break toward the lowest a,
// then lowest b.
//
// The caller drives each pass: `enumerate` is invoked with a sink; it must
// open a fresh stream pass and report, for every conflicting pair (u, v) and
// every pattern both endpoints could jointly move to, the pair of r-value
// intervals and the term (1/slack_u + 1/slack_v).
class HashSelector {
 public:
  struct Contribution {
    Arc iu;
    Arc iv;
    double cost;
  };

  class Sink {
   public:
    virtual ~Sink() = default;
    virtual void begin_edge(VertexId u, VertexId v) = 0;
    virtual void add(const Arc& iu, const Arc& iv, double cost) = 0;
  };

  struct Result {
    CarterWegman::Fn fn;
    double part_sum = 0.0;  // selected part's total
    double fn_value = 0.0;  // selected function's candidate potential
  };

  HashSelector(std::uint64_t p, SpaceMeter* meter) : p_(p), meter_(meter) {}

  // enumerate(sink) is called exactly twice.
  Result select(const std::function<void(Sink&)>& enumerate);

  // Exact candidate potential of a single function, from the same interval
  // data (used by pass B and available to diagnostics).
  std::vector<double> part_sums_for_test(const std::function<void(Sink&)>& enumerate);

 private:
  std::uint64_t p_;
  SpaceMeter* meter_;

  std::vector<double> compute_part_sums(const std::function<void(Sink&)>& enumerate);
  std::vector<double> compute_fn_values(std::uint64_t a, const std::function<void(Sink&)>& enumerate);
};

std::uint64_t modpow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

}  // namespace streamcolor
