#pragma once

#include <cstddef>
#include <vector>

#include "rank1/matrix.hpp"

namespace rank1 {

enum class Relation { LessEqual, Equal };

/**
 * maximize objective^T z  subject to  constraints.row(r) . z  (<= | =)  rhs[r].
 *
 * Variables are free; sign restrictions are ordinary rows (e.g. -z_j <= 0).
 */
struct LinearProgramSpec
{
    RatVector objective;
    RatMatrix constraints;
    std::vector<Relation> relations;
    RatVector rhs;

    std::size_t variable_count() const { return objective.size(); }
    /** Throws MalformedLP. */
    void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution
{
    LPStatus status = LPStatus::Infeasible;
    RatVector point;
    Rational value;
    /** Ascending indices of linearly independent rows tight at `point`. */
    std::vector<std::size_t> basis;
    /** True when every nonbasic reduced cost is strictly nonzero, which certifies a unique optimum. */
    bool strictly_optimal = false;
    std::size_t pivots = 0;
};

/**
 * Two-phase tableau simplex in exact arithmetic with Bland's smallest-index
 * rule. Free variables are pivoted into the basis first and never leave it,
 * so an optimal basis is a set of tight constraint rows (a vertex) whenever
 * the constraint matrix has full column rank.
 */
LPSolution solve_lp(const LinearProgramSpec& spec);

}  // namespace rank1
