#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rank1/matrix.hpp"

namespace rank1 {

/**
 * Two-player game in normal form. Strategies are 0-based throughout the
 * library; output routines print them 1-based.
 */
struct BimatrixGame
{
    RatMatrix A;  // row player
    RatMatrix B;  // column player

    BimatrixGame() = default;
    /** Throws DimensionMismatch unless A and B share a non-empty shape. */
    BimatrixGame(RatMatrix a, RatMatrix b);

    std::size_t m() const { return A.rows(); }
    std::size_t n() const { return A.cols(); }

    friend bool operator==(const BimatrixGame&, const BimatrixGame&) = default;
};

struct MixedProfile
{
    RatVector x;
    RatVector y;

    /** Non-negative entries summing to one in both strategies. */
    bool is_valid() const;

    friend bool operator==(const MixedProfile&, const MixedProfile&) = default;
    friend auto operator<=>(const MixedProfile&, const MixedProfile&) = default;
};

struct SupportPair
{
    std::vector<std::size_t> I;  // rows with x_i > 0
    std::vector<std::size_t> J;  // columns with y_j > 0

    friend bool operator==(const SupportPair&, const SupportPair&) = default;
};

SupportPair support_of(const MixedProfile& p);

struct EquilibriumRecord
{
    MixedProfile profile;
    Rational payoff1;
    Rational payoff2;
    SupportPair support;
    /** +1 or -1 when known. */
    std::optional<int> index;
    std::string provenance;

    /** Fills payoffs and supports from the profile. */
    static EquilibriumRecord make(const BimatrixGame& game, MixedProfile profile,
                                  std::string provenance);
};

/** B = -A + gamma beta^T. */
struct Rank1Decomposition
{
    RatMatrix A;
    RatVector gamma;
    RatVector beta;

    std::size_t m() const { return A.rows(); }
    std::size_t n() const { return A.cols(); }
    BimatrixGame game() const;
};

/** B = C + gamma beta^T. */
struct GeneralDecomposition
{
    RatMatrix A;
    RatMatrix C;
    RatVector gamma;
    RatVector beta;

    std::size_t m() const { return A.rows(); }
    std::size_t n() const { return A.cols(); }
    BimatrixGame game() const;
    bool is_rank1_form() const { return C == -A; }

    static GeneralDecomposition from_rank1(const Rank1Decomposition& d);
};

/** B = -A + sum_l gammas[l] betas[l]^T. */
struct RankKDecomposition
{
    RatMatrix A;
    std::vector<RatVector> gammas;
    std::vector<RatVector> betas;

    std::size_t k() const { return betas.size(); }
    std::size_t m() const { return A.rows(); }
    std::size_t n() const { return A.cols(); }
    BimatrixGame game() const;
};

/** beta_j = j (1-based), used whenever a generic beta must be invented. */
RatVector default_beta(std::size_t n);

/**
 * Exact best-response test. An invalid profile (negative entry, wrong sum)
 * is not an equilibrium. Throws DimensionMismatch on wrong lengths.
 */
bool verify_equilibrium(const BimatrixGame& game, const MixedProfile& p);

/**
 * Factor A + B = gamma beta^T. When A + B = 0, gamma = 0 and beta is
 * `zero_sum_beta` or default_beta(n). Throws RankTooHigh.
 */
Rank1Decomposition decompose_rank1(const BimatrixGame& game,
                                   const std::optional<RatVector>& zero_sum_beta = std::nullopt);

/** k = rank(A + B); betas are independent rows of A + B. */
RankKDecomposition decompose_rank_k(const BimatrixGame& game);

/** Embeds an arbitrary game as C = B, gamma = 0 (so H is the plane lambda = 0). */
GeneralDecomposition embed_general(const BimatrixGame& game, const RatVector& beta);

/**
 * Clears all denominators: A c^2, gamma c, beta c are integral, where c is
 * the lcm of every denominator. Returns (scaled decomposition, c^2).
 */
std::pair<Rank1Decomposition, Rational> integerize(const Rank1Decomposition& d);

bool is_constant(const RatVector& v);

/**
 * With beta constant the column player's payoff differs from -A by a row
 * constant only, so (A, -A) has the same equilibria. Throws NotConstantBeta.
 */
BimatrixGame reduce_constant_beta(const Rank1Decomposition& d);

struct ShiftedGame
{
    BimatrixGame game;
    Rational shift1;
    Rational shift2;
};

/** Adds ceil(|min|) + 1 to a matrix whose minimum is not already positive. */
ShiftedGame positivity_shift(const BimatrixGame& game);

}  // namespace rank1
