#include <doctest.h>

#include <cmath>

#include "envelopes/envelope.hpp"
#include "linalg/norms.hpp"
#include "linalg/svd.hpp"
#include "runtime/error.hpp"
#include "subspaces/subspace.hpp"
#include "widths/duality.hpp"
#include "widths/gelfand.hpp"
#include "widths/kolmogorov.hpp"
#include "widths/test_sets.hpp"

using namespace sw;

namespace {
const Exponent kInf = Exponent::infinity();

Eigen::MatrixXd identity_direction(int order) {
  return vectorize(SquareMatrix::Identity(order, order)).normalized();
}
}  // namespace

TEST_CASE("vasileva extreme points") {
  const auto one = vasileva_extreme_points(1);
  REQUIRE(one.members.size() == 2);
  CHECK(one.members[0](0, 0) == 1.0);
  CHECK(one.members[1](0, 0) == -1.0);
  const auto two = vasileva_extreme_points(2);
  CHECK(two.members.size() == 8);
  for (const auto& m : two.members) {
    CHECK(m.norm() == 1.0);
    const Vector s = singular_values(m);
    CHECK(s(0) == doctest::Approx(1.0));
    CHECK(s(1) == 0.0);
  }
}

TEST_CASE("averaged sets") {
  const auto one = averaged_set_enumerate(1, 1);
  CHECK(one.group_size == 2);
  REQUIRE(one.members.size() == 2);
  CHECK(one.members[0](0, 0) == 1.0);
  CHECK(one.members[1](0, 0) == -1.0);

  CHECK(averaged_set_enumerate(2, 1).members.size() == 16);
  CHECK(*averaging_group_size(4) == 9216);
  CHECK_THROWS_AS(averaged_set_enumerate(6, 2), UsageError);
  CHECK_THROWS_AS(averaged_set_enumerate(3, 4), UsageError);

  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= n; ++r)
      for (const auto& m : averaged_set_enumerate(n, r).members)
        for (double t : {0.5, 1.0, 3.0})
          CHECK(schatten_norm(m, Exponent(t)) == doctest::Approx(std::pow(r, 1.0 / t)).epsilon(1e-12));

  const auto a = averaged_set_sample(7, 3, 50, 4), b = averaged_set_sample(7, 3, 50, 4);
  CHECK(a.members.size() == 50);
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    CHECK(a.members[i] == b.members[i]);
    CHECK(schatten_norm(a.members[i], kInf) == 1.0);
    CHECK(schatten_norm(a.members[i], Exponent(1.0)) == doctest::Approx(3.0));
    CHECK(a.members[i].cwiseAbs().sum() == 3.0);
  }
  CHECK(averaged_set_sample(7, 3, 50, 5).members[0] != a.members[0]);
}

TEST_CASE("orthogonality identity") {
  // Direct oracle from the enumerated members.
  for (auto [n, r] : {std::pair{2, 1}, std::pair{3, 2}}) {
    const auto set = averaged_set_enumerate(n, r);
    const double g = static_cast<double>(set.members.size());
    for (int a = 0; a < n * n; ++a)
      for (int b = 0; b < n * n; ++b) {
        double sum = 0.0;
        for (const auto& m : set.members) sum += m(a % n, a / n) * m(b % n, b / n);
        const double expected = a == b ? static_cast<double>(r) / (n * n) : 0.0;
        CHECK(sum / g == doctest::Approx(expected).epsilon(1e-15));
      }
  }
  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= n; ++r) {
      const auto rep = orthogonality_check(n, r);
      CHECK(rep.exact_ok);
      CHECK(rep.exact_mismatches == 0);
      CHECK(rep.max_float_deviation <= 1e-14);
    }
  CHECK_THROWS_AS(orthogonality_check(6, 1), UsageError);
}

TEST_CASE("distance to a subspace") {
  const Eigen::MatrixXd line = identity_direction(2);
  SquareMatrix x = SquareMatrix::Zero(2, 2);
  x(0, 0) = 3.0;
  x(1, 1) = -1.0;
  // x - tI is diagonal, so Schatten norms are l_s norms of (3 - t, -1 - t)
  const KolmogorovTarget sinf{KolmogorovTarget::Kind::Schatten, kInf};
  const KolmogorovTarget s1{KolmogorovTarget::Kind::Schatten, Exponent(1.0)};
  const KolmogorovTarget s3{KolmogorovTarget::Kind::Schatten, Exponent(3.0)};
  const KolmogorovTarget s2{KolmogorovTarget::Kind::Schatten, Exponent(2.0)};
  CHECK(distance_to_subspace(x, line, sinf).value == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(distance_to_subspace(x, line, s1).value == doctest::Approx(4.0).epsilon(1e-7));
  CHECK(distance_to_subspace(x, line, s3).value == doctest::Approx(2.0 * std::cbrt(2.0)).epsilon(1e-7));
  CHECK(distance_to_subspace(x, line, s2).value == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(distance_to_subspace(x, Eigen::MatrixXd(4, 0), s1).value == doctest::Approx(4.0));
  CHECK(distance_to_subspace(SquareMatrix::Identity(2, 2), line, sinf).value == 0.0);

  // mixed l_inf(l_2): columns (3 - t, -t)... of x - t e_11 direction
  const Eigen::MatrixXd e11 = vectorize(matrix_unit(2, 0, 0));
  const KolmogorovTarget minf{KolmogorovTarget::Kind::Mixed, kInf};
  CHECK(distance_to_subspace(x, e11, minf).value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK_THROWS_AS(distance_to_subspace(x, line, {KolmogorovTarget::Kind::Schatten, Exponent(0.5)}),
                  UsageError);
}

TEST_CASE("kolmogorov widths of finite sets") {
  const FiniteTestSet zero{3, {SquareMatrix::Zero(3, 3)}, SetProvenance::Custom, std::nullopt};
  const KolmogorovTarget s1{KolmogorovTarget::Kind::Schatten, Exponent(1.0)};
  for (int n : {1, 2, 5}) CHECK(kolmogorov_finite_set(zero, s1, n).value == 0.0);

  const FiniteTestSet two{3, {matrix_unit(3, 0, 1), 2.0 * matrix_unit(3, 2, 2) - matrix_unit(3, 1, 0)},
                          SetProvenance::Custom, std::nullopt};
  CHECK(kolmogorov_finite_set(two, s1, 3).value == 0.0);
  CHECK(kolmogorov_finite_set(two, s1, 1).value == doctest::Approx(2.0 + 1.0));

  const auto v = vasileva_extreme_points(2);
  const KolmogorovTarget m22{KolmogorovTarget::Kind::Mixed, Exponent(2.0)};
  CHECK(kolmogorov_finite_set(v, m22, 1).value == doctest::Approx(1.0));
  CHECK_THROWS_AS(kolmogorov_finite_set(v, {KolmogorovTarget::Kind::Mixed, Exponent(0.5)}, 2), UsageError);

  // Frobenius: the mean squared distance of the 2N^2 members to any L of
  // dimension n - 1 is 1 - (n - 1)/N^2, so the maximum is at least its root.
  const KolmogorovTarget fro{KolmogorovTarget::Kind::Schatten, Exponent(2.0)};
  for (int n = 1; n <= 4; ++n) {
    KolmogorovOptions o;
    o.outer_iters = 20;
    const double value = kolmogorov_finite_set(v, fro, n, o).value;
    CHECK(value >= std::sqrt(1.0 - (n - 1) / 4.0) - 1e-12);
    CHECK(value <= 1.0 + 1e-12);
  }
}

TEST_CASE("gelfand estimates from explicit subspaces") {
  for (int n : {3, 4})
    for (int k = 0; k < n; ++k) {
      const auto r = gelfand_upper_from_subspace(coordinate_row_subspace(n, k), kInf, Exponent(1.0), 32, 1);
      CHECK(r.value == doctest::Approx(n - k).epsilon(1e-6));
      CHECK(r.query.n == k * n + 1);
      CHECK(r.direction == Direction::Heuristic);
      const auto s = gelfand_upper_from_subspace(coordinate_row_subspace(n, k), Exponent(3.0), Exponent(1.5), 32, 1);
      CHECK(s.value == doctest::Approx(std::pow(n - k, 1 / 1.5 - 1 / 3.0)).epsilon(1e-6));
    }
  const auto full = gelfand_upper_from_subspace(coordinate_row_subspace(3, 0), Exponent(1.0), Exponent(2.0), 32, 2);
  CHECK(full.value == doctest::Approx(1.0).epsilon(1e-9));
  const auto row = gelfand_upper_from_subspace(coordinate_row_subspace(2, 1), Exponent(1.0), Exponent(2.0), 16, 3);
  CHECK(row.value == doctest::Approx(1.0).epsilon(1e-12));

  for (int n = 1; n <= 9; ++n) {
    const MatrixSubspace c = coordinate_candidate(3, n);
    CHECK(c.dim() == 9 - n + 1);
    CHECK(c.codim() == n - 1);
  }
}

TEST_CASE("gelfand minimax endpoints and monotonicity") {
  MinimaxOptions o;
  o.restarts = 32;
  o.outer_iters = 10;
  for (auto [p, q] : {std::pair{Exponent(1.0), kInf}, std::pair{Exponent(3.0), Exponent(1.5)}}) {
    const int n = 3;
    const double exponent = q.reciprocal() - p.reciprocal();
    const auto first = gelfand_minimax({WidthKind::Gelfand, p, q, n, 1}, o);
    CHECK(first.value == doctest::Approx(std::max(1.0, std::pow(n, exponent))).epsilon(0.02));
    const auto last = gelfand_minimax({WidthKind::Gelfand, p, q, n, n * n}, o);
    CHECK(last.value == doctest::Approx(p <= q ? std::pow(n, exponent) : 1.0).epsilon(0.02));
  }
  for (int n = 1; n <= 4; ++n)
    CHECK(gelfand_minimax({WidthKind::Gelfand, Exponent(1.5), Exponent(1.5), 2, n}, o).value ==
          doctest::Approx(1.0).epsilon(1e-12));

  // q <= p: flat-top floor and coordinate ceiling
  const Exponent p = kInf, q = Exponent(2.0);
  const auto profile = gelfand_profile(p, q, 3, o);
  REQUIRE(profile.size() == 9);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const int n = profile[i].query.n;
    const double m = 9 - n + 1;
    CHECK(profile[i].value >= std::pow(m / 6.0, 0.5) * 0.95);
    CHECK(profile[i].value <= std::pow(std::ceil(m / 3.0), 0.5) * 1.05);
    if (i > 0) CHECK(profile[i].value <= profile[i - 1].value);
  }
  CHECK_THROWS_AS(gelfand_minimax({WidthKind::Kolmogorov, p, q, 3, 1}, o), UsageError);
  CHECK_THROWS_AS(gelfand_minimax({WidthKind::Gelfand, p, q, 3, 10}, o), UsageError);
}

TEST_CASE("interpolation consistency") {
  MinimaxOptions o;
  o.restarts = 32;
  o.outer_iters = 10;
  const Exponent p(1.0), q(4.0 / 3.0), two(2.0);
  const double theta = interpolation_exponent(p, q);
  for (int n = 1; n <= 4; ++n) {
    const double direct = gelfand_minimax({WidthKind::Gelfand, p, q, 2, n}, o).value;
    const double endpoint = gelfand_minimax({WidthKind::Gelfand, p, two, 2, n}, o).value;
    CHECK(direct <= std::pow(endpoint, 1.0 - theta) * 1.1);
  }
}

TEST_CASE("duality") {
  CHECK_THROWS_AS(duality_gap(Exponent(0.5), Exponent(2.0), 2, 1), UsageError);
  DualityOptions o;
  o.net_samples = 256;
  o.gelfand.restarts = 16;
  o.kolmogorov_outer_iters = 5;
  const auto same = duality_gap(Exponent(3.0), Exponent(3.0), 2, 1, o);
  CHECK(same.gelfand.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(same.kolmogorov.value == doctest::Approx(1.0).epsilon(1e-9));

  const auto net = unit_ball_net(3, Exponent(1.5), 20, 7);
  for (const auto& m : net.members) CHECK(schatten_norm(m, Exponent(1.5)) == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& m : unit_ball_net(3, Exponent(1.0), 5, 7).members) CHECK(schatten_norm(m, kInf) == doctest::Approx(1.0));
  for (const auto& m : unit_ball_net(3, kInf, 5, 7).members)
    CHECK(singular_values(m).minCoeff() == doctest::Approx(1.0));

  const auto last = duality_gap(Exponent(1.0), Exponent(2.0), 2, 4, o);
  CHECK(last.gelfand.value == doctest::Approx(std::sqrt(0.5)).epsilon(0.02));
  CHECK(last.kolmogorov.value == doctest::Approx(std::sqrt(0.5)).epsilon(0.05));
}
