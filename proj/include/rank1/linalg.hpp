#pragma once

#include <cstddef>
#include <vector>

#include "rank1/matrix.hpp"

namespace rank1 {

/**
 * Exact determinant by Bareiss fraction-free elimination. The matrix is first
 * scaled row-wise to integers so every intermediate quotient is exact.
 * Throws NotSquare.
 */
Rational determinant(const RatMatrix& m);

/** Sign of the determinant, in {-1, 0, +1}. */
int determinant_sign(const RatMatrix& m);

/** Unique solution of m x = rhs. Throws NotSquare, DimensionMismatch, Singular. */
RatVector solve_linear_system(const RatMatrix& m, const RatVector& rhs);

/** Rank over the rationals. */
std::size_t matrix_rank(const RatMatrix& m);

/** Indices of a maximal linearly independent subset of rows, chosen greedily in row order. */
std::vector<std::size_t> independent_rows(const RatMatrix& m);

}  // namespace rank1
