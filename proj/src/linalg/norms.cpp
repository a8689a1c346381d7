#include "linalg/norms.hpp"

#include <algorithm>
#include <cmath>

#include "linalg/svd.hpp"
#include "runtime/error.hpp"

namespace sw {

double lp_norm(std::span<const double> x, const Exponent& p) {
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  if (p.is_infinite() || peak == 0.0) return peak;

  const double e = p.value();
  if (e < 1.0) {
    // log ||x||_p = log peak + (1/p) log sum exp(p (log|x_i| - log peak))
    const double log_peak = std::log(peak);
    double acc = 0.0;
    for (double v : x)
      if (v != 0.0) acc += std::exp(e * (std::log(std::abs(v)) - log_peak));
    return std::exp(log_peak + std::log(acc) / e);
  }
  double acc = 0.0;
  for (double v : x) acc += std::pow(std::abs(v) / peak, e);
  return peak * std::pow(acc, 1.0 / e);
}

double lp_norm(const Vector& x, const Exponent& p) {
  return lp_norm(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), p);
}

double schatten_norm(const SquareMatrix& a, const Exponent& p) {
  return lp_norm(singular_values(a), p);
}

double mixed_norm(const SquareMatrix& m, const Exponent& inner, const Exponent& outer) {
  validate_square(m);
  Vector column_norms(m.cols());
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    const Vector col = m.col(k);
    column_norms(k) = lp_norm(col, inner);
  }
  return lp_norm(column_norms, outer);
}

double mixed_norm_transposed(const SquareMatrix& m, const Exponent& inner,
                             const Exponent& outer) {
  return mixed_norm(m.transpose(), inner, outer);
}

PietschRatios pietsch_ratio_compare(std::span<const double> x, const Exponent& q,
                                    const Exponent& p) {
  require(q < p, "comparison requires q < p");
  require(x.size() >= 2, "comparison requires a sequence of length m+1 >= 2");
  const auto head = x.first(x.size() - 1);
  double head_min = std::abs(head[0]);
  bool any_nonzero = false;
  for (double v : head) {
    head_min = std::min(head_min, std::abs(v));
    any_nonzero = any_nonzero || v != 0.0;
  }
  require(std::abs(x.back()) <= head_min,
          "last entry must not exceed the smallest of the first m entries in modulus");
  require(any_nonzero, "sequence must not be identically zero");
  return {lp_norm(x, q) / lp_norm(x, p), lp_norm(head, q) / lp_norm(head, p)};
}

}  // namespace sw
