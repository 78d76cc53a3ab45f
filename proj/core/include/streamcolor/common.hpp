#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace streamcolor {

using VertexId = std::uint32_t;
using ColorId = std::uint32_t;

inline constexpr ColorId kUncolored = std::numeric_limits<ColorId>::max();

// Failure classes map 1:1 onto the CLI exit-code contract.
enum class ExitCode : int {
  ok = 0,
  input_error = 2,
  verification_failure = 3,
  theory_violation = 4,
  palette_overflow = 5,
  query_fail = 6,
};

struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// A provable guarantee of the algorithms failed at runtime. Always a bug in
// this implementation, never a property of the input.
struct TheoryViolation : std::logic_error {
  explicit TheoryViolation(const std::string& msg) : std::logic_error(msg) {}
};

struct PaletteOverflowError : std::runtime_error {
  explicit PaletteOverflowError(const std::string& msg) : std::runtime_error(msg) {}
};

struct AccountingError : std::logic_error {
  explicit AccountingError(const std::string& msg) : std::logic_error(msg) {}
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
  return splitmix64(s);
}

// xoshiro256** seeded via splitmix64. Self-contained so that seeded runs are
// byte-reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Unbiased uniform draw from [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw UsageError("Rng::below(0)");
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double prob) { return unit() < prob; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

inline std::uint32_t ceil_log2(std::uint64_t v) {
  std::uint32_t bits = 0;
  while ((std::uint64_t{1} << bits) < v) ++bits;
  return bits;
}

}  // namespace streamcolor
