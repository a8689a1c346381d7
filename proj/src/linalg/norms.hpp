#pragma once

#include <span>
#include <utility>

#include "linalg/exponent.hpp"
#include "linalg/matrix.hpp"

namespace sw {

/// (sum |x_i|^p)^(1/p), or max |x_i| for p = inf. Quasi-norm exponents p < 1
/// are evaluated in the log domain.
double lp_norm(std::span<const double> x, const Exponent& p);
double lp_norm(const Vector& x, const Exponent& p);

/// Schatten (quasi-)norm: the l_p norm of the singular values.
double schatten_norm(const SquareMatrix& a, const Exponent& p);

/// Mixed norm l_outer(l_inner): the inner norm runs over the row index j of
/// each column k, the outer norm over the columns.
double mixed_norm(const SquareMatrix& m, const Exponent& inner, const Exponent& outer);

/// The same aggregation applied to rows instead of columns, i.e.
/// mixed_norm(m^T, inner, outer).
double mixed_norm_transposed(const SquareMatrix& m, const Exponent& inner, const Exponent& outer);

/// Ratios R_l = ||x_{1..l}||_q / ||x_{1..l}||_p for l = m+1 (extended) and
/// l = m (truncated), where x has length m+1.
struct PietschRatios {
  double extended;
  double truncated;
};

/// Requires 0 < q < p <= inf, length >= 2, |x_{m+1}| <= min_{i<=m} |x_i| and
/// the first m entries not all zero. Throws UsageError otherwise.
PietschRatios pietsch_ratio_compare(std::span<const double> x, const Exponent& q,
                                    const Exponent& p);

}  // namespace sw
