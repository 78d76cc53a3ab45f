#include "streamcolor/hashing.hpp"

#include <map>
#include <mutex>
#include <string>

namespace streamcolor {

namespace {

// a * b mod poly, where poly has degree w (leading bit set).
std::uint64_t clmulmod(std::uint64_t a, std::uint64_t b, std::uint64_t poly, std::uint32_t w) {
  std::uint64_t r = 0;
  std::uint64_t t = a;
  while (b) {
    if (b & 1) r ^= t;
    b >>= 1;
    t <<= 1;
    if (t >> w) t ^= poly;
  }
  return r;
}

std::uint64_t gf2_powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t poly,
                         std::uint32_t w) {
  std::uint64_t r = 1;
  while (exp) {
    if (exp & 1) r = clmulmod(r, base, poly, w);
    base = clmulmod(base, base, poly, w);
    exp >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> fs;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      fs.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) fs.push_back(v);
  return fs;
}

}  // namespace

bool gf2_poly_is_irreducible(std::uint64_t poly, std::uint32_t w) {
  // Rabin's test: x^(2^w) == x mod poly, and x^(2^(w/q)) != x for every prime
  // divisor q of w.
  const std::uint64_t x = 2;  // the polynomial 'x'
  std::uint64_t t = x;
  for (std::uint32_t i = 0; i < w; ++i) t = clmulmod(t, t, poly, w);
  if (t != x) return false;
  for (std::uint64_t q : prime_factors(w)) {
    std::uint64_t u = x;
    for (std::uint32_t i = 0; i < w / q; ++i) u = clmulmod(u, u, poly, w);
    // gcd(x^(2^(w/q)) - x, poly) must be 1; since poly passes the first test,
    // it suffices that u != x.
    if (u == x) return false;
  }
  return true;
}

std::uint64_t find_irreducible_poly(std::uint32_t w) {
  if (w == 0 || w > 63) throw UsageError("find_irreducible_poly: width out of range");
  if (w == 1) return 0b10;  // x
  const std::uint64_t lead = std::uint64_t{1} << w;
  // Irreducible polynomials of degree >= 2 need a constant term.
  for (std::uint64_t low = 1; low < lead; low += 2)
    if (gf2_poly_is_irreducible(lead | low, w)) return lead | low;
  throw TheoryViolation("no irreducible polynomial found for w=" + std::to_string(w));
}

Gf2Field::Gf2Field(std::uint32_t w) : w_(w), poly_(find_irreducible_poly(w)) {
  if (w_ > 20) return;  // slow multiply only
  const std::uint64_t size = std::uint64_t{1} << w_;
  const std::uint64_t n = size - 1;
  // Find a generator of the multiplicative group.
  const auto factors = prime_factors(n);
  std::uint64_t gen = 0;
  for (std::uint64_t cand = 2; cand < size; ++cand) {
    bool ok = gf2_powmod(cand, n, poly_, w_) == 1;
    for (std::uint64_t q : factors)
      if (ok && gf2_powmod(cand, n / q, poly_, w_) == 1) ok = false;
    if (ok) {
      gen = cand;
      break;
    }
  }
  if (gen == 0 && n == 1) gen = 1;  // GF(2): trivial group
  if (gen == 0) throw TheoryViolation("no generator found for GF(2^" + std::to_string(w_) + ")");
  exp_.assign(n, 0);
  log_.assign(size, 0);
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = static_cast<std::uint32_t>(acc);
    log_[acc] = static_cast<std::uint32_t>(i);
    acc = clmulmod(acc, gen, poly_, w_);
  }
  if (acc != 1)
    throw TheoryViolation("generator cycle length mismatch in GF(2^" + std::to_string(w_) + ")");
  tables_ready_ = true;
}

std::uint64_t Gf2Field::mul_slow(std::uint64_t a, std::uint64_t b) const {
  return clmulmod(a, b, poly_, w_);
}

const Gf2Field& Gf2Field::get(std::uint32_t w) {
  static std::mutex mu;
  static std::map<std::uint32_t, Gf2Field> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(w);
  if (it == cache.end()) it = cache.emplace(w, Gf2Field(w)).first;
  return it->second;
}

FourIndepHash FourIndepHash::sample(Rng& rng, const Gf2Field& field, std::uint32_t out_bits) {
  if (out_bits > field.width())
    throw UsageError("FourIndepHash: output wider than the field");
  FourIndepHash h;
  h.field = &field;
  h.out_bits = out_bits;
  const std::uint64_t size = std::uint64_t{1} << field.width();
  for (auto& c : h.coeff) c = rng.below(size);
  return h;
}

}  // namespace streamcolor
