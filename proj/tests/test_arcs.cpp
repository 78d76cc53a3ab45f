#include "doctest.h"

#include <vector>

#include "streamcolor/arcs.hpp"
#include "streamcolor/common.hpp"

using namespace streamcolor;

namespace {

bool arc_contains(const Arc& a, std::uint64_t x, std::uint64_t p) {
  if (a.len >= p) return true;
  const std::uint64_t off = (x + p - a.start % p) % p;
  return off < a.len;
}

std::uint64_t brute_overlap(std::uint64_t s, std::uint64_t l1, std::uint64_t l2, std::uint64_t p) {
  std::uint64_t count = 0;
  for (std::uint64_t t = 0; t < p; ++t)
    if (arc_contains(Arc{0, l1}, t, p) && arc_contains(Arc{s, l2}, t, p)) ++count;
  return count;
}

}  // namespace

TEST_CASE("arc_intersect matches pointwise membership, exhaustively at p=7") {
  const std::uint64_t p = 7;
  std::vector<Arc> out;
  for (std::uint64_t s1 = 0; s1 < p; ++s1)
    for (std::uint64_t l1 = 0; l1 <= p; ++l1)
      for (std::uint64_t s2 = 0; s2 < p; ++s2)
        for (std::uint64_t l2 = 0; l2 <= p; ++l2) {
          const Arc a{s1, l1}, b{s2, l2};
          arc_intersect(a, b, p, out);
          CHECK(out.size() <= 2);
          std::uint64_t covered = 0;
          for (std::uint64_t x = 0; x < p; ++x) {
            const bool expect = arc_contains(a, x, p) && arc_contains(b, x, p);
            bool got = false;
            for (const Arc& r : out) got = got || arc_contains(r, x, p);
            CHECK(expect == got);
            covered += got;
          }
          std::uint64_t total = 0;
          for (const Arc& r : out) total += r.len;
          CHECK(total == covered);  // pieces are disjoint
        }
}

TEST_CASE("box_overlap matches brute force, exhaustively at p=6 and p=9") {
  for (std::uint64_t p : {6ull, 9ull}) {
    for (std::uint64_t l1 = 0; l1 <= p; ++l1)
      for (std::uint64_t l2 = 0; l2 <= p; ++l2)
        for (std::uint64_t s = 0; s < p; ++s)
          CHECK(box_overlap(s, l1, l2, p) == brute_overlap(s, l1, l2, p));
  }
}

TEST_CASE("correlation accumulator reconstructs shifted box correlations") {
  for (std::uint64_t p : {2ull, 3ull, 7ull, 12ull, 31ull}) {
    Rng rng(p * 1000 + 9);
    for (int trial = 0; trial < 60; ++trial) {
      const int terms = 1 + static_cast<int>(rng.below(5));
      struct Term {
        double c;
        std::uint64_t l1, l2, k;
      };
      std::vector<Term> ts;
      CorrelationAccumulator acc(p);
      for (int i = 0; i < terms; ++i) {
        Term t;
        t.c = 0.25 * (1 + rng.below(8));
        t.l1 = 1 + rng.below(p);
        t.l2 = 1 + rng.below(p);
        t.k = rng.below(p);
        ts.push_back(t);
        acc.add(t.c, t.l1, t.l2, t.k);
      }
      std::vector<double> got(p, 0.0);
      acc.finalize_into([&](std::uint64_t d, double v) { got[d] = v; });
      for (std::uint64_t d = 0; d < p; ++d) {
        double expect = 0.0;
        for (const Term& t : ts)
          expect += t.c * static_cast<double>(box_overlap((t.k + p - d) % p, t.l1, t.l2, p));
        CHECK(got[d] == doctest::Approx(expect).epsilon(1e-9));
      }
    }
  }
}
