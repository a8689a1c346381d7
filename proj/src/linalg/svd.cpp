#include "linalg/svd.hpp"

#include <Eigen/SVD>

#include "runtime/error.hpp"

namespace sw {
namespace {

constexpr Eigen::Index kJacobiMaxOrder = 16;

void clamp_small(Vector& s) {
  if (s.size() == 0) return;
  const double floor = kSingularClampRatio * s(0);
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) < floor) s(i) = 0.0;
}

template <typename Solver>
void check(const Solver& solver) {
  if (solver.info() != Eigen::Success)
    throw NumericalError("SVD backend did not converge");
  if (!solver.singularValues().allFinite())
    throw NumericalError("SVD produced non-finite singular values");
}

}  // namespace

namespace detail {

SVDFactors svd_unchecked(const SquareMatrix& a) {
  SVDFactors f;
  if (a.rows() <= kJacobiMaxOrder) {
    Eigen::JacobiSVD<SquareMatrix, Eigen::NoQRPreconditioner> solver(
        a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    check(solver);
    f.left = solver.matrixU();
    f.singular = solver.singularValues();
    f.right = solver.matrixV();
  } else {
    Eigen::BDCSVD<SquareMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    check(solver);
    f.left = solver.matrixU();
    f.singular = solver.singularValues();
    f.right = solver.matrixV();
  }
  clamp_small(f.singular);
  return f;
}

Vector singular_values_unchecked(const SquareMatrix& a) {
  Vector s;
  if (a.rows() <= kJacobiMaxOrder) {
    Eigen::JacobiSVD<SquareMatrix, Eigen::NoQRPreconditioner> solver(a);
    check(solver);
    s = solver.singularValues();
  } else {
    Eigen::BDCSVD<SquareMatrix> solver(a);
    check(solver);
    s = solver.singularValues();
  }
  clamp_small(s);
  return s;
}

}  // namespace detail

SVDFactors svd_factorize(const SquareMatrix& a) {
  validate_square(a);
  return detail::svd_unchecked(a);
}

Vector singular_values(const SquareMatrix& a) {
  validate_square(a);
  return detail::singular_values_unchecked(a);
}

}  // namespace sw
