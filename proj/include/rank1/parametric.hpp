#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rank1/game.hpp"
#include "rank1/path.hpp"
#include "rank1/polytope.hpp"

namespace rank1 {

/** lambda - gamma . x over Q' coordinates (x, lambda, pi2). */
struct Hyperplane
{
    RatVector gamma;

    Rational value(const RatVector& w) const;
    /** The linear part, for directions. */
    Rational rate(const RatVector& direction) const;
};

struct OptSet
{
    RatVector v_point;  // (y, pi1)
    RatVector w_point;  // (x, lambda, pi2)
    /** The edge of the fully-labeled path containing the optimum, oriented. */
    PathEdge edge;
    /** True when OPT is the whole (E_w, w) edge; v_point is then its smaller-basis endpoint. */
    bool is_edge = false;
    Rational p_value;  // max delta beta.y - pi1
    Rational q_value;  // min pi2
};

/**
 * LP(delta) as two split LPs over P and Q' with lambda = delta.
 * Requires C = -A. Throws NonzeroOptimum, DegeneratePolytope.
 */
OptSet solve_lp_delta(const PathInstance& inst, const Rational& delta);

/** lambda (beta.y) - pi1 - pi2 at a pair of points. */
Rational complementarity_gap(const PathInstance& inst, const RatVector& v, const RatVector& w);

struct Crossing
{
    Rational t;
    RatVector v;
    RatVector w;
    /** +1 when the directed edge passes from H- to H+. */
    int orientation_index = 0;
};

/** At most one crossing on a non-degenerate edge. Throws EdgeInHyperplane, DegeneratePolytope. */
std::vector<Crossing> edge_hyperplane_intersection(const PathEdge& edge, const Hyperplane& h);

/** y and x read off the crossing; `game` is the member of the space selected by H. */
EquilibriumRecord record_from_crossing(const BimatrixGame& game, const Crossing& c, std::string provenance);

struct IsNEOutcome
{
    enum class Kind { Found, Below, Above };
    Kind kind = Kind::Below;
    std::vector<EquilibriumRecord> found;
    std::vector<Crossing> crossings;
    OptSet opt;
    /** Sign of lambda - gamma.x at the OPT representative. */
    int opt_side = 0;
};

/** Table-style probe: intersect the edge containing OPT(delta) with H(gamma). */
IsNEOutcome is_ne(const PathInstance& inst, const RatVector& gamma, const Rational& delta);

/** P and Q'^k for a rank-k decomposition. */
struct RankKInstance
{
    RankKDecomposition d;
    Polytope P;
    Polytope Qk;

    explicit RankKInstance(RankKDecomposition dec);
    std::size_t k() const { return d.k(); }
    std::size_t m() const { return d.m(); }
    std::size_t n() const { return d.n(); }
};

struct OptK
{
    RatVector v_point;  // (y, pi1)
    RatVector w_point;  // (x, lambda_1..lambda_k, pi2)
    Rational objective;
};

/**
 * LP^k(delta). The Q'^k side must have a single optimal point; that is
 * checked and a violation raises DegeneratePolytope. `shuffle_seed`
 * permutes variables and rows of both LPs before solving.
 */
OptK solve_lp_k(const RankKInstance& inst, const RatVector& delta,
                std::optional<std::uint64_t> shuffle_seed = std::nullopt);

/** Throws OutOfBox unless gammas[l].min() <= a_l <= gammas[l].max() for all l. */
RatVector fixed_point_eval(const RankKInstance& inst, const std::vector<RatVector>& gammas, const RatVector& a);

}  // namespace rank1
