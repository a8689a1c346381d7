#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "linalg/exponent.hpp"
#include "linalg/matrix.hpp"
#include "linalg/norms.hpp"
#include "linalg/svd.hpp"
#include "runtime/error.hpp"
#include "support.hpp"

using namespace sw;
using testing_support::rel_diff;

namespace {
const Exponent kInf = Exponent::infinity();

SquareMatrix diag_ones(int n, int r) {
  SquareMatrix a = SquareMatrix::Zero(n, n);
  for (int i = 0; i < r; ++i) a(i, i) = 1.0;
  return a;
}
}  // namespace

TEST_CASE("exponent parsing and conjugates") {
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(Exponent::parse("Infinity").is_infinite());
  CHECK(Exponent::parse("4/3").value() == doctest::Approx(4.0 / 3.0));
  CHECK(Exponent::parse("0.25").value() == 0.25);
  CHECK(Exponent(std::numeric_limits<double>::infinity()).is_infinite());
  CHECK_THROWS_AS(Exponent(0.0), UsageError);
  CHECK_THROWS_AS(Exponent(-1.0), UsageError);
  CHECK_THROWS_AS(Exponent::parse("two"), Error);
  CHECK(Exponent(3.0) < kInf);
  CHECK_FALSE(kInf < kInf);

  CHECK(conjugate_exponent(Exponent(2.0)) == Exponent(2.0));
  CHECK(conjugate_exponent(Exponent(1.0)).is_infinite());
  CHECK(conjugate_exponent(kInf) == Exponent(1.0));
  CHECK(conjugate_exponent(Exponent::parse("4/3")).value() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(conjugate_exponent(Exponent(0.5)), UsageError);
}

TEST_CASE("svd of small closed-form cases") {
  const Vector s3 = singular_values(SquareMatrix::Identity(3, 3));
  CHECK(s3.isApprox(Vector::Ones(3)));
  CHECK(singular_values(diag_ones(3, 2)) == Vector((Vector(3) << 1, 1, 0).finished()));

  SquareMatrix a(2, 2);
  a << 1, 2, 3, 4;
  // eigenvalues of A^T A are 15 +- sqrt(221)
  const double big = std::sqrt(15.0 + std::sqrt(221.0));
  const double small = std::sqrt(15.0 - std::sqrt(221.0));
  const SVDFactors f = svd_factorize(a);
  CHECK(f.singular(0) == doctest::Approx(big).epsilon(1e-14));
  CHECK(f.singular(1) == doctest::Approx(small).epsilon(1e-12));
  CHECK(big == doctest::Approx(5.4650).epsilon(1e-4));
  CHECK(small == doctest::Approx(0.3660).epsilon(1e-3));
  const SquareMatrix rebuilt = f.left * f.singular.asDiagonal() * f.right.transpose();
  CHECK((rebuilt - a).norm() <= 1e-8 * a.norm());
}

TEST_CASE("svd factor invariants on random input") {
  std::mt19937_64 gen(11);
  for (int n : {1, 2, 5, 16, 17, 30}) {
    const SquareMatrix a = testing_support::random_matrix(gen, n, n);
    const SVDFactors f = svd_factorize(a);
    const auto id = SquareMatrix::Identity(n, n);
    CHECK((f.left.transpose() * f.left - id).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((f.right.transpose() * f.right - id).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((f.left * f.singular.asDiagonal() * f.right.transpose() - a).norm() <= 1e-8 * a.norm());
    for (int i = 1; i < n; ++i) CHECK(f.singular(i) <= f.singular(i - 1));
    CHECK(rel_diff(f.singular.squaredNorm(), a.squaredNorm()) <= 1e-10);
  }
}

TEST_CASE("svd rejects bad input") {
  SquareMatrix a = SquareMatrix::Identity(2, 2);
  a(0, 1) = std::nan("");
  CHECK_THROWS_AS(svd_factorize(a), InputError);
  CHECK_THROWS_AS(svd_factorize(SquareMatrix(2, 3)), UsageError);
}

TEST_CASE("schatten norm closed forms") {
  for (int n : {1, 3, 6})
    for (double p : {0.25, 0.5, 1.0, 2.0, 3.0}) {
      CHECK(schatten_norm(SquareMatrix::Identity(n, n), Exponent(p)) ==
            doctest::Approx(std::pow(n, 1.0 / p)).epsilon(1e-14));
    }
  CHECK(schatten_norm(SquareMatrix::Identity(4, 4), kInf) == 1.0);
  for (int r = 1; r <= 4; ++r)
    for (double t : {0.5, 1.0, 2.5})
      CHECK(schatten_norm(diag_ones(4, r), Exponent(t)) ==
            doctest::Approx(std::pow(r, 1.0 / t)).epsilon(1e-14));
  CHECK(schatten_norm(SquareMatrix::Zero(3, 3), Exponent(0.5)) == 0.0);

  std::mt19937_64 gen(5);
  const SquareMatrix m = testing_support::random_matrix(gen, 5, 5);
  CHECK(schatten_norm(m, Exponent(2.0)) == doctest::Approx(m.norm()).epsilon(1e-12));
}

TEST_CASE("quasi-norms survive wide dynamic range") {
  SquareMatrix a = SquareMatrix::Zero(2, 2);
  a(0, 0) = 1e200;
  a(1, 1) = 1e200;
  CHECK(schatten_norm(a, Exponent(0.25)) == doctest::Approx(16.0 * 1e200).epsilon(1e-12));
  a *= 1e-195;
  a *= 1e-195;
  CHECK(schatten_norm(a, Exponent(0.25)) == doctest::Approx(16.0 * 1e-190).epsilon(1e-12));
}

TEST_CASE("mixed norm orientation and closed forms") {
  for (double q : {0.5, 1.0, 3.0})
    CHECK(mixed_norm(SquareMatrix::Identity(4, 4), Exponent(2.0), Exponent(q)) ==
          doctest::Approx(std::pow(4.0, 1.0 / q)));
  for (double a : {0.5, 2.0})
    for (double b : {1.0, 4.0}) CHECK(mixed_norm(matrix_unit(3, 0, 0), Exponent(a), Exponent(b)) == 1.0);

  // A single full column: inner l_2 over the column gives sqrt(3); a single
  // full row gives three unit columns aggregated by the outer exponent.
  SquareMatrix col = SquareMatrix::Zero(3, 3), row = SquareMatrix::Zero(3, 3);
  col.col(0).setOnes();
  row.row(0).setOnes();
  CHECK(mixed_norm(col, Exponent(2.0), kInf) == doctest::Approx(std::sqrt(3.0)));
  CHECK(mixed_norm(row, Exponent(2.0), kInf) == doctest::Approx(1.0));
  CHECK(mixed_norm_transposed(row, Exponent(2.0), kInf) == doctest::Approx(std::sqrt(3.0)));

  std::mt19937_64 gen(9);
  const SquareMatrix m = testing_support::random_matrix(gen, 4, 4);
  CHECK(mixed_norm(m, Exponent(2.0), Exponent(2.0)) ==
        doctest::Approx(schatten_norm(m, Exponent(2.0))).epsilon(1e-13));
}

TEST_CASE("norm inequalities on random matrices") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 7;
    SquareMatrix a = testing_support::random_matrix(gen, n, n);
    const double q = 2.0 + 6.0 * unit(gen), p = 1.0 + unit(gen);
    CHECK(mixed_norm(a, Exponent(2.0), Exponent(q)) <= schatten_norm(a, Exponent(q)) * (1 + 1e-10));
    CHECK(mixed_norm(a, Exponent(2.0), kInf) <= schatten_norm(a, kInf) * (1 + 1e-10));
    CHECK(schatten_norm(a, Exponent(p)) <= mixed_norm(a, Exponent(2.0), Exponent(p)) * (1 + 1e-10));

    const double lo = 0.25 + unit(gen), hi = lo + 3.0 * unit(gen);
    CHECK(schatten_norm(a, Exponent(lo)) >= schatten_norm(a, Exponent(hi)));
    CHECK(schatten_norm(a, Exponent(hi)) >= schatten_norm(a, kInf));

    const double theta = unit(gen);
    const double r = 1.0 / ((1 - theta) / lo + theta / hi);
    CHECK(schatten_norm(a, Exponent(r)) <=
          std::pow(schatten_norm(a, Exponent(lo)), 1 - theta) *
              std::pow(schatten_norm(a, Exponent(hi)), theta) * (1 + 1e-10));

    const SquareMatrix u = testing_support::random_orthogonal(gen, n);
    const SquareMatrix v = testing_support::random_orthogonal(gen, n);
    CHECK(rel_diff(schatten_norm(u * a * v, Exponent(lo)), schatten_norm(a, Exponent(lo))) <= 1e-9);
  }
}

TEST_CASE("pietsch comparison") {
  const Exponent one(1.0), two(2.0);
  std::vector<double> x{1, 1};
  auto r = pietsch_ratio_compare(x, one, two);
  CHECK(r.extended == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.truncated == doctest::Approx(1.0));
  x = {2, 1};
  r = pietsch_ratio_compare(x, one, two);
  CHECK(r.extended == doctest::Approx(3.0 / std::sqrt(5.0)));
  CHECK(r.truncated == doctest::Approx(1.0));
  x = {1, 0};
  r = pietsch_ratio_compare(x, one, kInf);
  CHECK(r.extended == 1.0);
  CHECK(r.truncated == 1.0);

  x = {1, 2};
  CHECK_THROWS_AS(pietsch_ratio_compare(x, one, two), UsageError);
  x = {0, 0};
  CHECK_THROWS_AS(pietsch_ratio_compare(x, one, two), UsageError);
  x = {1, 0.5};
  CHECK_THROWS_AS(pietsch_ratio_compare(x, two, one), UsageError);
  CHECK_THROWS_AS(pietsch_ratio_compare(std::vector<double>{1.0}, one, two), UsageError);
}

TEST_CASE("matrix text round trip and malformed input") {
  std::mt19937_64 gen(3);
  const SquareMatrix a = testing_support::random_matrix(gen, 3, 3);
  std::stringstream buf;
  write_matrix(buf, a);
  CHECK(read_matrix(buf) == a);

  std::istringstream bad1("2\n1,2\n3\n");
  CHECK_THROWS_AS(read_matrix(bad1), InputError);
  std::istringstream bad2("2\n1,2\n3,nan\n");
  CHECK_THROWS_AS(read_matrix(bad2), InputError);
  std::istringstream bad3("2\n1,2\n");
  CHECK_THROWS_AS(read_matrix(bad3), InputError);
  CHECK_THROWS_AS(read_matrix_file("/nonexistent/m.csv"), InputError);
}
