#include "linalg/smooth.hpp"

#include <cmath>

namespace sw::detail {
namespace {
constexpr double kTieTolerance = 1e-9;
}

std::vector<Surrogate> schedule(const Exponent& e) {
  if (e.is_infinite()) return {{16.0, 0.0}, {64.0, 0.0}, {256.0, 0.0}, {0.0, 0.0}};
  if (e.value() <= 1.0) return {{e.value(), 1e-6}, {e.value(), 1e-7}, {e.value(), 1e-8}};
  return {{e.value(), 0.0}};
}

double log_norm(const Vector& s, const Surrogate& g, double eps, Vector* grad) {
  const Eigen::Index n = s.size();
  if (g.power == 0.0) {
    const double top = s.maxCoeff();
    if (grad) {
      grad->setZero(n);
      Eigen::Index tied = 0;
      for (Eigen::Index i = 0; i < n; ++i) tied += s(i) >= top * (1.0 - kTieTolerance);
      for (Eigen::Index i = 0; i < n; ++i)
        if (s(i) >= top * (1.0 - kTieTolerance)) (*grad)(i) = 1.0 / (static_cast<double>(tied) * top);
    }
    return std::log(top);
  }
  Vector w = s;
  if (eps > 0.0) w = (s.array().square() + eps * eps).sqrt();
  const double r = g.power;
  const double peak = w.maxCoeff();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (w(i) > 0.0) acc += std::pow(w(i) / peak, r);
  const double norm_log = std::log(peak) + std::log(acc) / r;
  if (grad) {
    grad->setZero(n);
    const double norm = std::exp(norm_log);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (w(i) <= 0.0) continue;
      (*grad)(i) = std::pow(w(i) / norm, r) / w(i) * (s(i) / w(i));
    }
  }
  return norm_log;
}

}  // namespace sw::detail
