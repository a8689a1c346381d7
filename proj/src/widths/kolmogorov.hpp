#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "linalg/exponent.hpp"
#include "linalg/matrix.hpp"
#include "subspaces/subspace.hpp"
#include "widths/estimate.hpp"
#include "widths/test_sets.hpp"

namespace sw {

/// Schatten S_s, or the mixed norm l_s(l_2) (l_2 over each column, l_s
/// across columns). s >= 1 in both cases.
struct KolmogorovTarget {
  enum class Kind { Schatten, Mixed } kind;
  Exponent s;
};

double target_norm(const SquareMatrix& a, const KolmogorovTarget& target);

struct DistanceResult {
  double value;           // achieved by coefficients, so an upper bound
  Vector coefficients;    // in the columns of basis
};

/// min_c ||x - unvec(basis c)|| in the target norm. basis is N^2 x d with
/// orthonormal columns (d may be 0). Exact least squares for the Frobenius
/// cases; otherwise smoothed BFGS with a relative tolerance of 1e-7.
DistanceResult distance_to_subspace(const SquareMatrix& x, const Eigen::MatrixXd& basis,
                                    const KolmogorovTarget& target,
                                    const std::optional<Vector>& warm = std::nullopt);

struct KolmogorovOptions {
  int outer_iters = 50;
  std::uint64_t seed = 0;
  int random_candidates = 4;
  /// Candidate subspaces of dimension n - 1 tried alongside the built-in ones.
  std::vector<MatrixSubspace> warm_subspaces;
};

/// Heuristic d_n(K): minimizes max_{x in K} dist(x, L) over subspaces L of
/// dimension n - 1. Candidates are the principal span of K, a greedy span of
/// members, random subspaces and any warm subspaces; the best one is refined
/// by descent along the active members and random rotations.
EstimateReport kolmogorov_finite_set(const FiniteTestSet& set, const KolmogorovTarget& target, int n,
                                     const KolmogorovOptions& options = {});

}  // namespace sw
