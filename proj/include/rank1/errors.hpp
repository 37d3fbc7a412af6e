#pragma once

#include <stdexcept>
#include <string>

namespace rank1 {

/** Base class of every error raised by the library. */
class Error : public std::runtime_error
{
    public:
        explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define RANK1_DEFINE_ERROR(Name, Base)                                         \
    class Name : public Base                                                   \
    {                                                                          \
        public:                                                                \
            explicit Name(const std::string& what = #Name) : Base(what) {}     \
    };

// exact-arith
RANK1_DEFINE_ERROR(MalformedLP, Error)
RANK1_DEFINE_ERROR(NotSquare, Error)
RANK1_DEFINE_ERROR(Singular, Error)

// game-model
RANK1_DEFINE_ERROR(DimensionMismatch, Error)
RANK1_DEFINE_ERROR(RankTooHigh, Error)
RANK1_DEFINE_ERROR(NotConstantBeta, Error)
RANK1_DEFINE_ERROR(NotEquilibrium, Error)

/**
 * Raised whenever a non-degeneracy assumption is observed to fail: a ratio
 * test ties, a vertex has surplus tight constraints, an extreme of beta is
 * attained twice, and so on.
 */
RANK1_DEFINE_ERROR(DegeneratePolytope, Error)
RANK1_DEFINE_ERROR(ZeroBeta, Error)
RANK1_DEFINE_ERROR(ConstantBeta, Error)
RANK1_DEFINE_ERROR(DependentBetas, Error)

/** Size guards (exhaustive enumeration, step budgets, iteration caps). */
RANK1_DEFINE_ERROR(GuardExceeded, Error)
RANK1_DEFINE_ERROR(TooLarge, GuardExceeded)
RANK1_DEFINE_ERROR(StepBudgetExceeded, GuardExceeded)
RANK1_DEFINE_ERROR(IterationCapExceeded, GuardExceeded)

// fully-labeled-path
RANK1_DEFINE_ERROR(NotFullyLabeled, Error)
RANK1_DEFINE_ERROR(MultipleDuplicates, DegeneratePolytope)

// parametric-lp
RANK1_DEFINE_ERROR(NonzeroOptimum, Error)
RANK1_DEFINE_ERROR(EdgeInHyperplane, DegeneratePolytope)
RANK1_DEFINE_ERROR(OutOfBox, Error)

// algorithms
RANK1_DEFINE_ERROR(IndexMismatch, Error)

// cli
RANK1_DEFINE_ERROR(ParseError, Error)

#undef RANK1_DEFINE_ERROR

}  // namespace rank1
