#include "randmat/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "linalg/norms.hpp"
#include "linalg/svd.hpp"
#include "randmat/rng.hpp"
#include "runtime/error.hpp"
#include "runtime/parallel.hpp"
#include "subspaces/subspace.hpp"

namespace sw {
namespace {

Band summarize(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  const double median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  return {v.front(), median, v.back()};
}

}  // namespace

SquareMatrix sample_gaussian(int order, std::uint64_t seed) {
  require(order >= 1, "order must be positive");
  RandomStream stream(seed, Salt::GaussianMatrix, 0);
  return gaussian_matrix(stream, order, order);
}

MonteCarloReport estimate_expected_schatten(int order, const Exponent& q, int trials,
                                            std::uint64_t seed) {
  require(order >= 1, "order must be positive");
  require(trials >= 2, "at least two trials are needed for a standard error");
  std::vector<double> values(static_cast<std::size_t>(trials));
  parallel_for(values.size(), [&](std::size_t t) {
    RandomStream stream(seed, Salt::MonteCarloTrial, t);
    values[t] = schatten_norm(gaussian_matrix(stream, order, order), q);
  });

  // Welford, in trial order.
  double mean = 0.0, m2 = 0.0;
  for (std::size_t t = 0; t < values.size(); ++t) {
    const double delta = values[t] - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (values[t] - mean);
  }
  const double variance = m2 / static_cast<double>(trials - 1);
  const double standard_error = std::sqrt(variance / trials);
  const double scale = std::pow(static_cast<double>(order), 0.5 + q.reciprocal());
  return {order, q, trials, mean, standard_error, mean / scale, seed};
}

double log_log_slope(const std::vector<MonteCarloReport>& reports) {
  require(reports.size() >= 2, "slope needs at least two reports");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : reports) {
    const double x = std::log(static_cast<double>(r.order)), y = std::log(r.mean);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(reports.size());
  const double denom = n * sxx - sx * sx;
  require(denom > 0.0, "slope needs at least two distinct orders");
  return (n * sxy - sx * sy) / denom;
}

DvoretzkyBandReport dvoretzky_band(int order, const Exponent& q, int k, int trials,
                                   std::uint64_t seed) {
  require(order >= 1, "order must be positive");
  require(q >= Exponent(2.0), "the Dvoretzky band needs q >= 2");
  require(k >= 1 && k <= order * order, "k must lie in [1, N^2]");
  require(trials >= 1, "trials must be positive");

  const double n = static_cast<double>(order);
  const double ratio_scale = std::pow(n, 0.5 - q.reciprocal());
  const double nuclear_scale = 1.0 / std::sqrt(n);
  std::vector<double> ratio(static_cast<std::size_t>(trials)), nuclear(ratio.size());
  parallel_for(ratio.size(), [&](std::size_t t) {
    const std::uint64_t key = derive_key(seed, Salt::DvoretzkyTrial, t);
    const MatrixSubspace s = random_subspace(order, k, key);
    RandomStream stream(key, Salt::DvoretzkyTrial, 1);
    Vector c = gaussian_matrix(stream, k, 1).col(0);
    c.normalize();
    const Vector sv = singular_values(s.member(c));
    const double two = lp_norm(sv, Exponent(2.0));
    ratio[t] = ratio_scale * lp_norm(sv, q) / two;
    nuclear[t] = nuclear_scale * lp_norm(sv, Exponent(1.0)) / two;
  });
  return {order, q, k, trials, seed, summarize(ratio), summarize(nuclear)};
}

int critical_dimension(int order, const Exponent& q, double fraction) {
  require(fraction > 0.0 && fraction < 1.0, "critical-dimension fraction must lie in (0, 1)");
  const double n = static_cast<double>(order);
  const double k = std::floor(fraction * std::pow(n, 1.0 + 2.0 * q.reciprocal()));
  return static_cast<int>(std::clamp(k, 1.0, n * n));
}

}  // namespace sw
