#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rank1/game.hpp"
#include "rank1/parametric.hpp"
#include "rank1/path.hpp"

namespace rank1 {

enum class BinSearchRule {
    /** Probe exactly as stated: any crossing on the edge containing OPT(a) ends the search. */
    Table,
    /** Keep OPT(a1) in H- and OPT(a2) in H+, and stop only on an H- to H+ crossing. */
    Ascending,
};

struct BinSearchReport
{
    EquilibriumRecord equilibrium;
    /** Midpoint probes (the while loop). */
    std::size_t iterations = 0;
    std::size_t is_ne_calls = 0;
    std::size_t bound_k = 0;
    /** (a1, a2) before each midpoint probe. */
    std::vector<std::pair<Rational, Rational>> pivots;
    /** Total bits of the integerized instance. */
    std::size_t bit_length = 0;
};

struct IterationBound
{
    std::size_t bound_k;
    mpz_class delta;
    std::size_t bit_length;
};

/** ceil(log2(Delta^2 (gamma_max - gamma_min))) on the integerized instance; Delta = (m+2)! |B|^(m+2). */
IterationBound iteration_bound(const Rank1Decomposition& d);

/**
 * Binary search on lambda for rank-1 games. Throws ConstantBeta,
 * IterationCapExceeded, DegeneratePolytope.
 */
BinSearchReport bin_search(const Rank1Decomposition& d, BinSearchRule rule = BinSearchRule::Ascending);

/**
 * Walks the oriented path from `start` to `end` (or to the final ray when
 * absent) and reports every crossing of H(gamma), with cross-checked index.
 */
std::vector<EquilibriumRecord> enumeration(const PathInstance& inst, const RatVector& gamma, const PathEdge& start,
                                           const std::optional<PathEdge>& end);

/** All equilibria of a rank-1 game: the path between OPT(gamma_min) and OPT(gamma_max). */
std::vector<EquilibriumRecord> enumerate_rank1(const Rank1Decomposition& d);

/** Every crossing along the full path of the given embedding. */
std::vector<EquilibriumRecord> enumerate_path(const GeneralDecomposition& d);

/** Embeds with C = B, gamma = 0 and returns the first crossing on the path. */
EquilibriumRecord solve_general(const BimatrixGame& game, const std::optional<RatVector>& beta = std::nullopt);

/**
 * Rank-1 solve that first removes a constant beta (zero-sum reduction) and
 * then runs bin_search. The result is an equilibrium of `game`.
 */
BinSearchReport solve_rank1(const BimatrixGame& game, const std::optional<RatVector>& zero_sum_beta = std::nullopt);

/** (-1)^(|I|+1) sign(det A_I^J det B_I^J) on the positivity-shifted game. Throws DegeneratePolytope. */
int determinant_index(const BimatrixGame& game, const MixedProfile& p);

/** Orientation index of the crossing, asserted equal to determinant_index. Throws IndexMismatch. */
int index_of(const BimatrixGame& game, const EquilibriumRecord& rec, const Crossing& crossing);

/** f(alpha, x, y) = (beta.y + alpha.x, alpha_2 - alpha_1, ..., alpha_m - alpha_1). Throws NotEquilibrium. */
RatVector homeo_forward(const GeneralDecomposition& d, const RatVector& alpha, const MixedProfile& p);

/** beta.y + lambda at a pair of points. */
Rational g_value(const PathInstance& inst, const RatVector& v, const RatVector& w);

/** Inverse of homeo_forward on a rank-1 space; `trace` is trace_path(inst). */
std::pair<RatVector, MixedProfile> homeo_inverse(const PathInstance& inst, const ComponentTrace& trace,
                                                 const RatVector& alpha_prime);
std::pair<RatVector, MixedProfile> homeo_inverse(const PathInstance& inst, const RatVector& alpha_prime);

/** alpha'^l = (lambda_l + beta^l.y, alpha^l_2 - alpha^l_1, ...), lambda_l = alpha^l.x. Throws NotEquilibrium. */
std::vector<RatVector> homeo_k_forward(const RankKDecomposition& d, const std::vector<RatVector>& alpha,
                                       const MixedProfile& p);

struct FixedPointResult
{
    RatVector a;
    Rational residual;  // max_l |f(a)_l - a_l|
    std::size_t evaluations = 0;
    /** Present only when residual is exactly zero and the profile verifies. */
    std::optional<EquilibriumRecord> equilibrium;
};

/**
 * EXPERIMENTAL heuristic. k = 1: bisection on a - f(a) with the probes of
 * bin_search. k > 1: damped iteration a <- (a + f(a))/2 from the box centre,
 * then grid refinement. Every probe also tries an exact solve on its affine
 * piece. Returns nothing when no point within `tol` is found.
 */
std::optional<FixedPointResult> fixed_point_search(const RankKInstance& inst, const std::vector<RatVector>& gammas,
                                                   const Rational& tol, std::size_t max_iters);

enum class RegionKind { HalfSpace, Slab, TwoHyperplaneUnion };

/** { alpha : alpha . coeffs = offset } for a bounding Q' vertex w: coeffs = x(w), offset = lambda(w). */
struct RegionHyperplane
{
    RatVector coeffs;
    Rational offset;
    std::vector<InequalityIndex> w_basis;
};

struct Region
{
    PolytopeVertex vertex;
    std::vector<RegionHyperplane> hyperplanes;
    RegionKind kind = RegionKind::HalfSpace;
    /** The (v, E_v) edge the region comes from. */
    PathEdge edge;
};

struct RegionGraph
{
    std::vector<Region> regions;
    std::vector<std::pair<std::size_t, std::size_t>> adjacency;
};

RegionGraph region_graph(const PathInstance& inst, const ComponentTrace& trace);

}  // namespace rank1
