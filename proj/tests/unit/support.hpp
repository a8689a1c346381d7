#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

// Test-side randomness comes from std::mt19937_64 on purpose, so fixtures do
// not share a code path with the library generator they help to check.
namespace testing_support {

inline Eigen::MatrixXd random_matrix(std::mt19937_64& gen, int rows, int cols) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = normal(gen);
  return m;
}

inline Eigen::MatrixXd random_orthogonal(std::mt19937_64& gen, int n) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(gen, n, n));
  return qr.householderQ();
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace testing_support
