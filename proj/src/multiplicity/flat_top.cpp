#include "multiplicity/flat_top.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "linalg/svd.hpp"
#include "randmat/rng.hpp"
#include "runtime/error.hpp"

namespace sw {
namespace {

constexpr int kMaxDoublings = 60;
constexpr int kMaxBisections = 200;
constexpr int kNullRetries = 3;
constexpr double kLeverageFloor = 1e-10;

int count_flat(const Vector& sigma, double tol) {
  int j = 0;
  while (j < sigma.size() && std::abs(sigma(j) - 1.0) <= tol) ++j;
  return j;
}

double top_singular(const SquareMatrix& a) { return detail::singular_values_unchecked(a)(0); }

// Rows: the first j columns of U^T X V and the (j, N-j) upper-right block,
// i.e. X v_i = 0 for i < j and u_l^T X v_i = 0 for l < j <= i.
Eigen::MatrixXd condition_matrix(const MatrixSubspace& s, const SVDFactors& f, int j) {
  const int n = s.order();
  const int rows = n * j + j * (n - j);
  Eigen::MatrixXd c(rows, s.dim());
  for (int m = 0; m < s.dim(); ++m) {
    const SquareMatrix y = f.left.transpose() * s.basis_matrix(m) * f.right;
    int r = 0;
    for (int col = 0; col < j; ++col)
      for (int row = 0; row < n; ++row) c(r++, m) = y(row, col);
    for (int col = j; col < n; ++col)
      for (int row = 0; row < j; ++row) c(r++, m) = y(row, col);
  }
  return c;
}

}  // namespace

long long kappa(int k, int order) {
  require(order >= 1, "order must be positive");
  require(k >= 1 && k <= order, "kappa requires 1 <= k <= N");
  const long long n = order, kk = k;
  return (2 * n - kk + 1) * (kk - 1) + 1;
}

int max_flat_multiplicity(int order, int dim) {
  require(dim >= 1 && dim <= order * order, "dimension must lie in [1, N^2]");
  int k = 1;
  while (k < order && kappa(k + 1, order) <= dim) ++k;
  return k;
}

int witness_multiplicity(int order, int n) {
  require(order >= 1, "order must be positive");
  require(n >= 1 && n <= order * order, "n must lie in [1, N^2]");
  const int k = (order * order - n) / (2 * order) + 1;
  return std::min(k, order);
}

MultiplicityCertificate construct_flat_top(const MatrixSubspace& s, int k, double tol,
                                           std::uint64_t seed) {
  const int n = s.order();
  require(k >= 1 && k <= n, "multiplicity k must satisfy 1 <= k <= N");
  require(tol > 0.0 && tol < 0.5, "tolerance must lie in (0, 0.5)");
  require(s.dim() >= kappa(k, n), "subspace dimension " + std::to_string(s.dim()) +
                                      " is below kappa(k) = " + std::to_string(kappa(k, n)));

  MultiplicityCertificate cert;
  cert.k = k;

  // k = 1: a seeded member normalized by its operator norm.
  RandomStream stream(seed, Salt::FlatTop, 0);
  Vector beta = gaussian_matrix(stream, s.dim(), 1).col(0);
  beta /= top_singular(s.member(beta));
  cert.gamma_trace.emplace_back(1, 0.0);

  for (;;) {
    const SquareMatrix b = s.member(beta);
    const SVDFactors f = detail::svd_unchecked(b);
    const int j = count_flat(f.singular, tol);
    if (j >= k) break;
    if (j == 0) throw NumericalError("flat-top construction lost its leading singular value");

    const Eigen::MatrixXd c = condition_matrix(s, f, j);
    Eigen::BDCSVD<Eigen::MatrixXd> csvd(c, Eigen::ComputeFullV);
    if (csvd.info() != Eigen::Success) throw NumericalError("condition-matrix SVD failed");
    const Eigen::MatrixXd& v = csvd.matrixV();
    const int guaranteed_null = s.dim() - static_cast<int>(c.rows());

    const auto u_plus = f.left.rightCols(n - j);
    const auto v_plus = f.right.rightCols(n - j);
    Vector x_coef;
    SquareMatrix reduced_x;
    int tried = 0;
    for (int col = s.dim() - 1; col >= s.dim() - guaranteed_null && tried < kNullRetries;
         --col, ++tried) {
      Vector a = v.col(col);
      const SquareMatrix x = s.member(a);
      const double scale = x.norm();
      if (scale == 0.0) continue;
      a /= scale;
      const SquareMatrix r = u_plus.transpose() * (x / scale) * v_plus;
      if (r.norm() >= kLeverageFloor) {
        x_coef = a;
        reduced_x = r;
        break;
      }
    }
    if (x_coef.size() == 0)
      throw NumericalError("no admissible null direction after " + std::to_string(kNullRetries) +
                           " attempts");

    const SquareMatrix reduced_b = u_plus.transpose() * b * v_plus;
    auto g = [&](double gamma) { return top_singular(gamma * reduced_x + reduced_b); };

    double lo = 0.0, hi = 1.0;
    int doublings = 0;
    while (g(hi) <= 1.0) {
      lo = hi;
      hi *= 2.0;
      if (++doublings > kMaxDoublings)
        throw NumericalError("gamma bracket not found within 60 doublings");
    }
    // Bisect well past tol/4 so residuals do not accumulate over the steps.
    const double target = std::min(0.25 * tol, 1e-13);
    double gamma = hi, gm = g(hi);
    for (int it = 0; it < kMaxBisections && std::abs(gm - 1.0) > target && hi - lo > 1e-16 * hi;
         ++it) {
      gamma = 0.5 * (lo + hi);
      gm = g(gamma);
      (gm > 1.0 ? hi : lo) = gamma;
    }
    if (std::abs(gm - 1.0) > 0.25 * tol)
      throw NumericalError("gamma bisection stalled at |g - 1| = " + std::to_string(std::abs(gm - 1.0)));

    const Vector next = beta + gamma * x_coef;
    const SquareMatrix a = s.member(next);
    double sep = 0.0;
    for (int i = 0; i < j; ++i)
      sep = std::max(sep, (a * f.right.col(i) - f.left.col(i)).norm());
    cert.separation_residuals.push_back(sep);

    const int reached = count_flat(detail::singular_values_unchecked(a), tol);
    if (reached <= j) throw NumericalError("flat-top step did not increase the multiplicity");
    cert.gamma_trace.emplace_back(reached, gamma);
    beta = next;
  }

  cert.coefficients = beta;
  cert.matrix = s.member(beta);
  const Vector sigma = singular_values(cert.matrix);
  cert.spectral_residual = 0.0;
  for (int i = 0; i < k; ++i) cert.spectral_residual = std::max(cert.spectral_residual, std::abs(sigma(i) - 1.0));
  cert.norm_excess = std::max(0.0, sigma(0) - 1.0);
  cert.containment_residual = containment_residual(cert.matrix, s);
  return cert;
}

FlatTopWitness flat_top_ratio_witness(const MatrixSubspace& s, const Exponent& p, const Exponent& q,
                                      double tol, std::uint64_t seed) {
  return flat_top_ratio_witness(s, p, q, witness_multiplicity(s.order(), s.codim() + 1), tol, seed);
}

FlatTopWitness flat_top_ratio_witness(const MatrixSubspace& s, const Exponent& p, const Exponent& q,
                                      int k, double tol, std::uint64_t seed) {
  require(q <= p, "flat-top witness requires q <= p");
  MultiplicityCertificate cert = construct_flat_top(s, k, tol, seed);
  const double value = schatten_ratio(cert.matrix, p, q);
  const double guaranteed = std::pow(static_cast<double>(k), q.reciprocal() - p.reciprocal());
  RatioWitness w{cert.matrix, value, p, q};
  return {std::move(w), k, guaranteed, std::move(cert)};
}

}  // namespace sw
