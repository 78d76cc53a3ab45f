#include "doctest.h"

#include <sstream>

#include "streamcolor/stream.hpp"

using namespace streamcolor;

namespace {
std::uint64_t sequence_digest(MultiPassSource& src) {
  auto pass = src.open_pass();
  std::uint64_t h = 0xcbf29ce484222325ull;
  const auto mixin = [&](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ull;
  };
  while (const StreamToken* t = pass.next()) {
    mixin(static_cast<std::uint64_t>(t->kind));
    mixin(t->u);
    mixin(t->v);
    for (ColorId c : t->list) mixin(c);
  }
  return h;
}
}  // namespace

TEST_CASE("empty stream pass") {
  MultiPassSource src;
  auto pass = src.open_pass();
  CHECK(pass.next() == nullptr);
  CHECK(src.pass_count() == 1);
}

TEST_CASE("two passes replay the identical sequence") {
  std::vector<StreamToken> tokens = {
      StreamToken::edge_token(0, 1),
      StreamToken::edge_token(1, 2),
      StreamToken::edge_token(0, 2),
  };
  MultiPassSource src(std::move(tokens));
  const std::uint64_t first = sequence_digest(src);
  const std::uint64_t second = sequence_digest(src);
  CHECK(first == second);
  CHECK(src.pass_count() == 2);
}

TEST_CASE("nested pass is a usage error") {
  MultiPassSource src(std::vector<StreamToken>{StreamToken::edge_token(0, 1)});
  auto pass = src.open_pass();
  CHECK_THROWS_AS(src.open_pass(), UsageError);
}

TEST_CASE("token file round trip preserves order bit-exactly") {
  std::vector<StreamToken> tokens = {
      StreamToken::list_token(3, {5, 9, 2}),
      StreamToken::edge_token(0, 1),
      StreamToken::query_token(),
      StreamToken::edge_token(7, 2),
      StreamToken::list_token(0, {11}),
  };
  std::stringstream ss;
  write_token_file(ss, tokens);
  const std::string text = ss.str();

  std::stringstream in(text);
  const auto parsed = read_token_file(in);
  std::stringstream again;
  write_token_file(again, parsed);
  CHECK(again.str() == text);

  MultiPassSource a{std::vector<StreamToken>(tokens)};
  MultiPassSource b{std::vector<StreamToken>(parsed)};
  CHECK(sequence_digest(a) == sequence_digest(b));
}

TEST_CASE("token file rejects malformed records") {
  std::stringstream bad1("E 0\n");
  CHECK_THROWS_AS(read_token_file(bad1), InputError);
  std::stringstream bad2("L 1 3 5 6\n");
  CHECK_THROWS_AS(read_token_file(bad2), InputError);
  std::stringstream bad3("X 1 2\n");
  CHECK_THROWS_AS(read_token_file(bad3), InputError);
}

TEST_CASE("space meter tracks peaks and rejects negative balances") {
  SpaceMeter meter;
  meter.charge(SpaceCategory::counters, 5);
  CHECK(meter.current_total() == 5);
  CHECK(meter.peak_words() == 5);
  meter.charge(SpaceCategory::counters, -5);
  CHECK(meter.current_total() == 0);
  CHECK(meter.peak_words() == 5);
  meter.charge(SpaceCategory::stored_edges, 7);
  CHECK(meter.peak_words() == 7);
  CHECK_THROWS_AS(meter.charge(SpaceCategory::accumulators, -1), AccountingError);
}

TEST_CASE("scoped charges release on destruction") {
  SpaceMeter meter;
  {
    ScopedCharge c(&meter, SpaceCategory::accumulators, 10);
    CHECK(meter.current_total() == 10);
  }
  CHECK(meter.current_total() == 0);
  CHECK(meter.peak_words() == 10);
}
