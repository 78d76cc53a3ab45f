#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "streamcolor/graph.hpp"
#include "streamcolor/stream.hpp"

namespace streamcolor {

// Seeded instance generators; every output respects the Delta cap.

std::vector<Edge> gen_path(std::uint32_t n);
std::vector<Edge> gen_clique(std::uint32_t n);

// Random graph with max degree <= delta; aims for the given average degree
// (default delta / 4).
std::vector<Edge> gen_gnp_capped(std::uint32_t n, std::uint32_t delta, std::uint64_t seed,
                                 double avg_degree = 0.0);

// Near-regular: delta rounds of random matchings.
std::vector<Edge> gen_regularish(std::uint32_t n, std::uint32_t delta, std::uint64_t seed);

// Per-vertex lists of exactly deg(v)+1 distinct colors from [0, universe).
std::vector<std::vector<ColorId>> gen_lists(const std::vector<Edge>& edges, std::uint32_t n,
                                            std::uint64_t universe, std::uint64_t seed);

// Edge tokens (optionally interleaved with list tokens), shuffled by seed.
std::vector<StreamToken> make_token_stream(const std::vector<Edge>& edges,
                                           const std::vector<std::vector<ColorId>>* lists,
                                           std::uint64_t seed);

// Oblivious insert/query transcript: random legal inserts with a query every
// q inserts, up to `inserts` insertions (0 = n * delta / 2).
std::vector<StreamToken> gen_adversary_replay(std::uint32_t n, std::uint32_t delta,
                                              std::uint64_t q, std::uint64_t seed,
                                              std::uint64_t inserts = 0);

}  // namespace streamcolor
