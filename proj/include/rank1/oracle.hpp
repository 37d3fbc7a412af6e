#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rank1/game.hpp"
#include "rank1/path.hpp"
#include "rank1/polytope.hpp"

namespace rank1 {

struct OracleResult
{
    /** Sorted by (x, y); indices unknown. */
    std::vector<EquilibriumRecord> equilibria;
    std::string method;
};

/** Equal-size supports, exact indifference systems. Throws TooLarge above 6x6. */
OracleResult support_enumeration(const BimatrixGame& game);

/** Every vertex of the polytope by trying all bases, in lexicographic basis order. Throws TooLarge. */
std::vector<PolytopeVertex> enumerate_vertices(const Polytope& poly);

/** All fully-labeled vertex pairs of P x Q'. Throws TooLarge above 4x4. */
std::vector<std::pair<PolytopeVertex, PolytopeVertex>> fully_labeled_pairs(const PathInstance& inst);

/** Maximin LP for (A, -A). payoff1 is the game value. */
EquilibriumRecord zero_sum_solve(const RatMatrix& A);

/** Same (x, y) as sets, exactly. */
bool same_equilibria(std::vector<EquilibriumRecord> a, std::vector<EquilibriumRecord> b);

}  // namespace rank1
