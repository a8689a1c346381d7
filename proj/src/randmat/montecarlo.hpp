#pragma once

#include <cstdint>
#include <vector>

#include "linalg/exponent.hpp"
#include "linalg/matrix.hpp"

namespace sw {

/// N x N matrix of i.i.d. N(0,1) entries from the pinned generator.
SquareMatrix sample_gaussian(int order, std::uint64_t seed);

struct MonteCarloReport {
  int order;
  Exponent q;
  int trials;
  double mean;
  double standard_error;
  double normalized_mean;  // mean / N^(1/2 + 1/q)
  std::uint64_t seed;
};

/// Sample mean and standard error of ||G||_{S_q} over independent trials.
MonteCarloReport estimate_expected_schatten(int order, const Exponent& q, int trials,
                                            std::uint64_t seed);

/// Least-squares slope of log(mean) against log(N).
double log_log_slope(const std::vector<MonteCarloReport>& reports);

struct Band {
  double min;
  double median;
  double max;
};

struct DvoretzkyBandReport {
  int order;
  Exponent q;
  int k;
  int trials;
  std::uint64_t seed;
  Band ratio;    // N^(1/2 - 1/q) ||A||_q / ||A||_2
  Band nuclear;  // N^(-1/2) ||A||_1 / ||A||_2
};

/// Per trial: a random k-dimensional subspace and a uniformly random unit
/// member of it.
DvoretzkyBandReport dvoretzky_band(int order, const Exponent& q, int k, int trials,
                                   std::uint64_t seed);

/// The default critical dimension floor(fraction * N^(1 + 2/q)), at least 1
/// and at most N^2.
int critical_dimension(int order, const Exponent& q, double fraction = 0.1);

}  // namespace sw
