#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "streamcolor/common.hpp"
#include "streamcolor/graph.hpp"

namespace streamcolor {

// Stream element: an edge, a (vertex, allowed-color-list) pair, or a query
// marker (used by adversarial replay transcripts).
struct StreamToken {
  enum class Kind : std::uint8_t { edge, list, query };

  Kind kind = Kind::edge;
  VertexId u = 0;
  VertexId v = 0;
  std::vector<ColorId> list;

  static StreamToken edge_token(VertexId a, VertexId b) {
    Edge e = Edge::canonical(a, b);
    return StreamToken{Kind::edge, e.u, e.v, {}};
  }
  static StreamToken list_token(VertexId x, std::vector<ColorId> colors) {
    return StreamToken{Kind::list, x, 0, std::move(colors)};
  }
  static StreamToken query_token() { return StreamToken{Kind::query, 0, 0, {}}; }
};

// Restartable token source. Every pass replays the identical sequence; the
// pass counter makes the pass complexity of an algorithm a measurement, not a
// claim. Algorithms may only reach tokens through open_pass().
class MultiPassSource {
 public:
  class Pass {
   public:
    ~Pass();
    Pass(Pass&& other) noexcept;
    Pass& operator=(Pass&&) = delete;
    Pass(const Pass&) = delete;

    const StreamToken* next() {
      if (pos_ >= src_->tokens_.size()) return nullptr;
      return &src_->tokens_[pos_++];
    }

   private:
    friend class MultiPassSource;
    explicit Pass(MultiPassSource* src) : src_(src) {}
    MultiPassSource* src_;
    std::size_t pos_ = 0;
  };

  MultiPassSource() = default;
  explicit MultiPassSource(std::vector<StreamToken> tokens) : tokens_(std::move(tokens)) {}

  static MultiPassSource from_edges(std::span<const Edge> edges);
  static MultiPassSource from_file(const std::string& path);

  Pass open_pass();
  std::uint64_t pass_count() const { return pass_count_; }
  std::size_t token_count() const { return tokens_.size(); }

 private:
  friend class Pass;
  std::vector<StreamToken> tokens_;
  std::uint64_t pass_count_ = 0;
  bool open_ = false;
};

// Token file format: "E u v" per edge, "L x k c1 ... ck" per list,
// "Q" per query marker. '#' lines are comments.
std::vector<StreamToken> read_token_file(std::istream& in);
void write_token_file(std::ostream& out, std::span<const StreamToken> tokens);

// Accounting unit: one machine word holds a vertex id, color id, or counter.
enum class SpaceCategory : std::uint8_t {
  stored_edges = 0,
  counters,
  hash_descriptions,
  accumulators,
  derived_cache,
};
inline constexpr std::size_t kSpaceCategoryCount = 5;
const char* space_category_name(SpaceCategory c);

class SpaceMeter {
 public:
  void charge(SpaceCategory cat, std::int64_t delta_words);
  std::int64_t current(SpaceCategory cat) const { return current_[static_cast<std::size_t>(cat)]; }
  std::int64_t current_total() const;
  std::int64_t peak_words() const { return peak_; }
  std::int64_t peak_words_excluding_cache() const { return peak_no_cache_; }

  // Derived bit figure at ceil(log2 n) bits per id-sized word.
  std::int64_t peak_bits(std::uint64_t n) const {
    return peak_ * static_cast<std::int64_t>(ceil_log2(n < 2 ? 2 : n));
  }

 private:
  std::array<std::int64_t, kSpaceCategoryCount> current_{};
  std::int64_t peak_ = 0;
  std::int64_t peak_no_cache_ = 0;
};

// RAII helper: charge on construction, release on destruction.
class ScopedCharge {
 public:
  ScopedCharge(SpaceMeter* meter, SpaceCategory cat, std::int64_t words)
      : meter_(meter), cat_(cat), words_(words) {
    if (meter_) meter_->charge(cat_, words_);
  }
  ~ScopedCharge() {
    if (meter_) meter_->charge(cat_, -words_);
  }
  ScopedCharge(const ScopedCharge&) = delete;
  ScopedCharge& operator=(const ScopedCharge&) = delete;

 private:
  SpaceMeter* meter_;
  SpaceCategory cat_;
  std::int64_t words_;
};

}  // namespace streamcolor
