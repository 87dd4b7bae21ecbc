#pragma once

// Determinants of exact-rational and interval matrices.

#include "nnrank/interval.hpp"
#include "nnrank/rational.hpp"

namespace nnrank {

inline constexpr long kDefaultExactDeterminantLimit = 32;

/// Fraction-free (Bareiss) elimination on the row-scaled integer matrix.
/// Throws std::invalid_argument for non-square input or n above `max_n`.
Rational exact_determinant(const RationalMatrix& m, long max_n = kDefaultExactDeterminantLimit);

/// Containing interval for det(m) by interval Gaussian elimination. Pivots are
/// chosen among entries whose interval excludes zero; when none does, the
/// remaining block is enclosed by cofactor expansion (small blocks) or a
/// Hadamard bound, so the result still contains the determinant.
Interval interval_determinant(const IntervalMatrix& m);

/// Cofactor (Laplace) expansion in interval arithmetic. Exponential cost.
Interval cofactor_determinant(const IntervalMatrix& m);

} // namespace nnrank
