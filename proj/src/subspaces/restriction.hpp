#pragma once

#include <cstdint>
#include <vector>

#include "linalg/exponent.hpp"
#include "subspaces/subspace.hpp"

namespace sw {

/// A member of a subspace together with its ratio ||A||_q / ||A||_p.
struct RatioWitness {
  SquareMatrix matrix;
  double value;
  Exponent p;
  Exponent q;
};

struct RestrictionOptions {
  int restarts = 64;
  int max_iterations = 200;
  std::uint64_t seed = 0;
  /// Extra starting points in basis coordinates, tried before the random
  /// starts (they do not count against `restarts`).
  std::vector<Vector> warm_starts;
};

struct RestrictionResult {
  RatioWitness witness;
  Vector coefficients;              // unit vector, witness = S.member(coefficients)
  std::vector<double> start_values; // best exact ratio reached from each start
  int best_start;
  long long iterations;             // summed over starts
};

/// ||A||_q / ||A||_p, 0 for A = 0.
double schatten_ratio(const SquareMatrix& a, const Exponent& p, const Exponent& q);

/// Multistart maximization of ||A||_q / ||A||_p over the unit sphere of S.
/// The reported value is achieved by the returned witness, so it is a lower
/// bound for the supremum. Starts run in parallel on independent substreams
/// and are reduced with a lowest-index tie-break.
RestrictionResult restriction_norm(const MatrixSubspace& s, const Exponent& p, const Exponent& q,
                                   const RestrictionOptions& options = {});

}  // namespace sw
