#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rank1/game.hpp"

namespace rank1 {

/**
 * Game files:
 *   # comment lines anywhere
 *   m n
 *   m rows of n entries of A
 *   m rows of n entries of B
 * Entries are integers or p/q. Throws ParseError.
 */
BimatrixGame parse_game(std::string_view text);
BimatrixGame read_game_file(const std::string& path);
std::string render_game(const BimatrixGame& game);

/** "v1,v2,..." Throws ParseError. */
RatVector parse_rational_list(std::string_view text);

/**
 * Adds u / (2^31 D) with u uniform in [1, 2^31 - 1] to every entry of A and
 * B, D = 2 (m + n) (max |entry| + 1) 10^6.
 */
BimatrixGame perturb_game(const BimatrixGame& game, std::uint64_t seed);

/** Rank-1 variant: perturbs A and beta, so B = -A + gamma beta^T stays rank 1. */
Rank1Decomposition perturb_rank1(const Rank1Decomposition& d, std::uint64_t seed);

}  // namespace rank1
