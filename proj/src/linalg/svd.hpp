#pragma once

#include "linalg/matrix.hpp"

namespace sw {

/// Singular values below this fraction of s_1 are clamped to exactly zero.
inline constexpr double kSingularClampRatio = 1e-12;

/// A = left * diag(singular) * right^T with orthogonal factors and
/// nonincreasing, nonnegative singular values.
struct SVDFactors {
  SquareMatrix left;
  Vector singular;
  SquareMatrix right;
};

/// Full SVD. Two-sided Jacobi for N <= 16, Golub-Kahan bidiagonalization with
/// divide and conquer above. Throws InputError on non-finite entries and
/// NumericalError if the backend reports failure.
SVDFactors svd_factorize(const SquareMatrix& a);

/// Singular values only, same backend and clamping as svd_factorize.
Vector singular_values(const SquareMatrix& a);

namespace detail {
// Skip validation; for hot loops whose inputs are finite by construction.
SVDFactors svd_unchecked(const SquareMatrix& a);
Vector singular_values_unchecked(const SquareMatrix& a);
}  // namespace detail

}  // namespace sw
