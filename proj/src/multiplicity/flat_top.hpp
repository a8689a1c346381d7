#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "subspaces/restriction.hpp"
#include "subspaces/subspace.hpp"

namespace sw {

/// kappa(k) = (2N - k + 1)(k - 1) + 1, for 1 <= k <= N.
long long kappa(int k, int order);

/// Largest k <= N with kappa(k) <= dim; the best multiplicity the flat-top
/// construction can guarantee inside a subspace of that dimension.
int max_flat_multiplicity(int order, int dim);

/// The simpler choice of k used for the lower-bound witness of a codimension
/// n-1 subspace: the largest k <= N with N^2 - n >= 2N(k - 1).
int witness_multiplicity(int order, int n);

struct MultiplicityCertificate {
  SquareMatrix matrix;
  Vector coefficients;               // matrix = S.member(coefficients)
  int k;
  double spectral_residual;          // max_{i<=k} |sigma_i - 1|
  double norm_excess;                // max(0, sigma_1 - 1)
  double containment_residual;
  std::vector<std::pair<int, double>> gamma_trace;  // (multiplicity reached, gamma)
  std::vector<double> separation_residuals;         // per step, max_i ||A v_i - u_i||
};

/// Inductive construction of A in S with sigma_1 = ... = sigma_k = 1 = ||A||_op.
/// Requires dim(S) >= kappa(k). The seed picks the starting member.
MultiplicityCertificate construct_flat_top(const MatrixSubspace& s, int k, double tol = 1e-8,
                                           std::uint64_t seed = 0);

struct FlatTopWitness {
  RatioWitness witness;
  int k;
  double guaranteed;  // k^(1/q - 1/p)
  MultiplicityCertificate certificate;
};

/// Lower-bound witness for the restriction of S_p -> S_q to S, q <= p, with
/// k = witness_multiplicity(N, codim(S) + 1).
FlatTopWitness flat_top_ratio_witness(const MatrixSubspace& s, const Exponent& p, const Exponent& q,
                                      double tol = 1e-8, std::uint64_t seed = 0);

/// Same, with an explicit multiplicity (e.g. max_flat_multiplicity).
FlatTopWitness flat_top_ratio_witness(const MatrixSubspace& s, const Exponent& p, const Exponent& q,
                                      int k, double tol, std::uint64_t seed);

}  // namespace sw
