#pragma once

#include <cstdint>
#include <vector>

#include "linalg/exponent.hpp"
#include "subspaces/subspace.hpp"
#include "widths/estimate.hpp"

namespace sw {

/// restriction_norm(S, p, q) as an estimate of c_n with n = codim(S) + 1.
/// The inner supremum is itself under-approximated, so the value is neither
/// a certified upper nor lower bound.
EstimateReport gelfand_upper_from_subspace(const MatrixSubspace& s, const Exponent& p,
                                           const Exponent& q, int restarts = 64,
                                           std::uint64_t seed = 0);

/// Matrices whose first k rows vanish and whose row k also vanishes in its
/// first r columns, with k N + r = n - 1. Dimension N^2 - n + 1.
MatrixSubspace coordinate_candidate(int order, int n);

struct MinimaxOptions {
  int outer_iters = 50;
  int restarts = 64;            // inner restarts for the final evaluations
  int screening_restarts = 16;  // inner restarts while searching
  int random_candidates = 4;
  std::uint64_t seed = 0;
};

/// Heuristic c_n(S_p -> S_q): minimum over candidate subspaces of codimension
/// n - 1 (the coordinate candidate, spans of Haar orthogonal matrices when
/// p < q, random subspaces) of the inner ratio maximum, followed by local
/// rotations that push the current witness out of the subspace. For q <= p
/// the inner maximum also includes the flat-top witness.
EstimateReport gelfand_minimax(const WidthQuery& query, const MinimaxOptions& options = {});

/// gelfand_minimax for n = 1..N^2 with a running minimum, so the reported
/// values are nonincreasing in n.
std::vector<EstimateReport> gelfand_profile(const Exponent& p, const Exponent& q, int order,
                                            const MinimaxOptions& options = {});

}  // namespace sw
