#pragma once

#include <cstdint>
#include <vector>

#include "streamcolor/common.hpp"

namespace streamcolor {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

// Carter-Wegman affine family over F_p: h_{a,b}(z) = a*z + b mod p, with
// (a, b) ranging over F_p^2. 2-independent over distinct inputs below p.
struct CarterWegman {
  std::uint64_t p;

  struct Fn {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
  };

  std::uint64_t eval(const Fn& h, std::uint64_t z) const { return (mulmod(h.a, z, p) + h.b) % p; }
  std::uint64_t family_size() const { return p * p; }
};

// GF(2^w) with a runtime-verified irreducible polynomial and log/exp tables
// built over a verified generator (w <= 20); falls back to shift-and-reduce
// multiplication for wider fields.
class Gf2Field {
 public:
  explicit Gf2Field(std::uint32_t w);

  std::uint32_t width() const { return w_; }
  std::uint64_t poly() const { return poly_; }
  std::uint64_t order() const { return (std::uint64_t{1} << w_) - 1; }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (!tables_ready_) return mul_slow(a, b);
    if (a == 0 || b == 0) return 0;
    std::uint64_t s = log_[a] + log_[b];
    const std::uint64_t n = order();
    if (s >= n) s -= n;
    return exp_[s];
  }
  static std::uint64_t add(std::uint64_t a, std::uint64_t b) { return a ^ b; }

  std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const;

  // Shared per-width instances; fields are immutable once built.
  static const Gf2Field& get(std::uint32_t w);

 private:
  std::uint32_t w_;
  std::uint64_t poly_;
  bool tables_ready_ = false;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
};

// Finds the lexicographically smallest irreducible polynomial of degree w
// over GF(2), returned with the leading bit set (bit w).
std::uint64_t find_irreducible_poly(std::uint32_t w);
bool gf2_poly_is_irreducible(std::uint64_t poly, std::uint32_t w);

// Degree-3 polynomial over GF(2^w) with output truncated to the low
// `out_bits` bits. Exactly 4-independent onto [2^out_bits] because the
// coefficient-to-values map on any 4 distinct points is a bijection and the
// truncation is balanced.
struct FourIndepHash {
  const Gf2Field* field = nullptr;
  std::uint64_t coeff[4] = {0, 0, 0, 0};
  std::uint32_t out_bits = 0;

  std::uint64_t eval(std::uint64_t x) const {
    std::uint64_t acc = coeff[3];
    for (int i = 2; i >= 0; --i) acc = Gf2Field::add(field->mul(acc, x), coeff[i]);
    return acc & ((std::uint64_t{1} << out_bits) - 1);
  }

  std::uint64_t full_eval(std::uint64_t x) const {
    std::uint64_t acc = coeff[3];
    for (int i = 2; i >= 0; --i) acc = Gf2Field::add(field->mul(acc, x), coeff[i]);
    return acc;
  }

  static FourIndepHash sample(Rng& rng, const Gf2Field& field, std::uint32_t out_bits);

  std::uint64_t description_bits() const { return 4ull * field->width(); }
};

// Seeded keyed pseudorandom function standing in for the uniformly random
// functions of the oracle-randomness model. The seed stays hidden from the
// adversary; evaluation is pure.
struct KeyedPrf {
  std::uint64_t seed = 0;

  std::uint64_t eval(std::uint64_t fn_id, std::uint64_t x, std::uint64_t range) const {
    const std::uint64_t h = mix64(mix64(seed, fn_id), x);
    // Multiply-shift range map: deterministic, negligible bias for desk-scale
    // ranges.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(h) * range) >> 64);
  }
};

}  // namespace streamcolor
