#pragma once

// Shared game fixtures and random instance generators.

#include <optional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "rank1/errors.hpp"
#include "rank1/game.hpp"
#include "rank1/io.hpp"
#include "rank1/path.hpp"
#include "rank1/polytope.hpp"

namespace rank1::testing {

inline RatMatrix mat(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<RatVector> r;
    for (const auto& row : rows) {
        RatVector v(row.size());
        std::size_t j = 0;
        for (long x : row)
            v[j++] = x;
        r.push_back(v);
    }
    return RatMatrix::from_rows(r);
}

inline RatVector vec(std::initializer_list<Rational> xs)
{
    RatVector v(xs.size());
    std::size_t i = 0;
    for (const auto& x : xs)
        v[i++] = x;
    return v;
}

/** The worked example: a general space with C and beta, gamma = 0. */
inline GeneralDecomposition ex1()
{
    GeneralDecomposition d;
    d.A = mat({{0, 9, 9}, {6, 6, 5}, {9, 7, 2}});
    d.C = mat({{6, 8, 6}, {5, 8, 8}, {4, 3, 0}});
    d.beta = vec({9, 7, 8});
    d.gamma = RatVector(3);
    return d;
}

inline RankKDecomposition k2()
{
    RankKDecomposition d;
    d.A = mat({{0, 9, 9}, {6, 6, 5}, {9, 7, 2}});
    d.gammas = {vec({1, 0, 0}), vec({0, 1, 0})};
    d.betas = {vec({1, 2, 3}), vec({5, 1, 4})};
    return d;
}

inline BimatrixGame matching_pennies()
{
    return BimatrixGame(mat({{1, -1}, {-1, 1}}), mat({{-1, 1}, {1, -1}}));
}

inline std::string data_file(const std::string& name) { return std::string(RANK1_DATA_DIR) + "/" + name; }

/**
 * Non-degenerate in every polytope the algorithms touch: the game's own
 * best-response polytopes, P and Q' of the space, and unique extremes of
 * beta with unique best rows there.
 */
inline bool nondegenerate(const GeneralDecomposition& d)
{
    try {
        const BimatrixGame g = d.game();
        if (!check_nondegenerate(build_P(g.A)) || !check_nondegenerate(build_P(g.B.transpose())))
            return false;
        const PathInstance inst(d);
        if (!check_nondegenerate(inst.P) || !check_nondegenerate(inst.Q))
            return false;
        start_indices(d.A, d.beta);
        return true;
    } catch (const DegeneratePolytope&) {
        return false;
    } catch (const ConstantBeta&) {
        return false;
    }
}

/** A, gamma, beta with integer entries in [-bound, bound]; B = -A + gamma beta^T. */
inline Rank1Decomposition random_rank1(std::mt19937_64& rng, std::size_t m, std::size_t n, long bound = 9)
{
    for (;;) {
        Rank1Decomposition d{random_matrix(rng, m, n, bound), random_vector(rng, m, bound),
                             random_vector(rng, n, bound)};
        if (is_constant(d.gamma) || is_constant(d.beta))
            continue;
        if (nondegenerate(GeneralDecomposition::from_rank1(d)))
            return d;
    }
}

/** Sizes drawn uniformly from [lo, hi]. */
inline Rank1Decomposition random_rank1_in(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
    std::uniform_int_distribution<std::size_t> sz(lo, hi);
    const std::size_t m = sz(rng), n = sz(rng);
    return random_rank1(rng, m, n);
}

/** Arbitrary integer game, non-degenerate under the default beta embedding. */
inline BimatrixGame random_general(std::mt19937_64& rng, std::size_t m, std::size_t n, long bound = 9)
{
    for (;;) {
        BimatrixGame g(random_matrix(rng, m, n, bound), random_matrix(rng, m, n, bound));
        if (nondegenerate(embed_general(g, default_beta(n))))
            return g;
    }
}

}  // namespace rank1::testing
