#pragma once

#include <cstdint>

#include "linalg/exponent.hpp"
#include "widths/estimate.hpp"
#include "widths/gelfand.hpp"
#include "widths/test_sets.hpp"

namespace sw {

/// Seeded net of extreme directions of the unit ball of S_t: U diag(sigma) V^T
/// with Haar U, V and ||sigma||_t = 1 (rank one for t = 1, flat for t = inf,
/// random |Gaussian| spectra otherwise).
FiniteTestSet unit_ball_net(int order, const Exponent& t, int samples, std::uint64_t seed);

struct DualityOptions {
  MinimaxOptions gelfand;
  int net_samples = 4096;
  int kolmogorov_outer_iters = 50;
  int kolmogorov_random_candidates = 4;
};

struct DualityReport {
  EstimateReport gelfand;     // c_n(S_p -> S_q)
  EstimateReport kolmogorov;  // d_n(S_q* -> S_p*) over the net
  double relative_gap;        // |c - d| / max(c, d)
};

/// Both sides of c_n(T) = d_n(T*) for T the identity S_p -> S_q, p, q >= 1.
/// The Kolmogorov search also starts from the annihilator of the subspace the
/// Gelfand search settled on.
DualityReport duality_gap(const Exponent& p, const Exponent& q, int order, int n,
                          const DualityOptions& options = {});

}  // namespace sw
