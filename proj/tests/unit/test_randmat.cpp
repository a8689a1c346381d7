#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "linalg/norms.hpp"
#include "randmat/montecarlo.hpp"
#include "randmat/rng.hpp"
#include "runtime/error.hpp"
#include "runtime/parallel.hpp"

using namespace sw;

namespace {
const Exponent kInf = Exponent::infinity();
}

TEST_CASE("philox known-answer vectors") {
  // Published Random123 known-answer tests for philox4x32 with 10 rounds.
  using W = std::array<std::uint32_t, 4>;
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == W{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        W{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        W{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are keyed and reproducible") {
  RandomStream a(1, Salt::GaussianMatrix, 0), b(1, Salt::GaussianMatrix, 0), c(1, Salt::GaussianMatrix, 1);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs = differs || x != c.next_u64();
  }
  CHECK(differs);
  CHECK(derive_key(5, Salt::FlatTop, 0) != derive_key(5, Salt::DualityNet, 0));

  RandomStream u(3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    const auto k = u.below(7);
    CHECK(k < 7);
    seen.insert(k);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("gaussian samples") {
  CHECK(sample_gaussian(4, 9) == sample_gaussian(4, 9));
  CHECK(sample_gaussian(4, 9) != sample_gaussian(4, 10));

  // half-normal mean sqrt(2/pi) and unit variance, within 3 Monte Carlo sigma
  const int draws = 1000000;
  double abs_sum = 0.0, sq_sum = 0.0;
  for (int s = 0; s < draws; ++s) {
    const double g = sample_gaussian(1, static_cast<std::uint64_t>(s))(0, 0);
    abs_sum += std::abs(g);
    sq_sum += g * g;
  }
  const double half_normal = std::sqrt(2.0 / std::numbers::pi);
  CHECK(std::abs(abs_sum / draws - half_normal) <= 3.0 * std::sqrt((1.0 - 2.0 / std::numbers::pi) / draws));
  CHECK(std::abs(sq_sum / draws - 1.0) <= 3.0 * std::sqrt(2.0 / draws));
}

TEST_CASE("expected schatten norm oracles") {
  const auto one = estimate_expected_schatten(1, Exponent(3.0), 20000, 1);
  CHECK(std::abs(one.mean - std::sqrt(2.0 / std::numbers::pi)) <= 3.0 * one.standard_error);

  // ||G||_{S_2} for N = 2 is chi with 4 degrees of freedom
  const double chi4 = std::sqrt(2.0) * std::tgamma(2.5) / std::tgamma(2.0);
  CHECK(chi4 == doctest::Approx(1.8800).epsilon(1e-4));
  const auto two = estimate_expected_schatten(2, Exponent(2.0), 4000, 2);
  CHECK(std::abs(two.mean - chi4) <= 3.0 * two.standard_error);
  CHECK(two.normalized_mean == doctest::Approx(two.mean / 2.0).epsilon(1e-12));

  for (int n : {4, 16, 48}) {
    // Jensen holds for the expectation; the sample mean may exceed it by noise
    const auto r = estimate_expected_schatten(n, Exponent(2.0), 200, 3);
    CHECK(r.mean <= n + 3.0 * r.standard_error);
    CHECK(r.mean / n >= 0.9);
  }
  CHECK_THROWS_AS(estimate_expected_schatten(2, Exponent(2.0), 1, 0), UsageError);
}

TEST_CASE("monte carlo is independent of the worker count") {
  set_worker_count(1);
  const auto a = estimate_expected_schatten(6, Exponent(1.0), 64, 11);
  set_worker_count(4);
  const auto b = estimate_expected_schatten(6, Exponent(1.0), 64, 11);
  set_worker_count(0);
  CHECK(a.mean == b.mean);
  CHECK(a.standard_error == b.standard_error);
}

TEST_CASE("hoelder chain on gaussian samples") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const SquareMatrix g = sample_gaussian(2 + static_cast<int>(s % 6), s);
    for (double qv : {1.0, 1.5, 3.0}) {
      const Exponent q(qv);
      const Exponent qs = conjugate_exponent(q);
      CHECK(schatten_norm(g, Exponent(2.0)) <=
            std::sqrt(schatten_norm(g, q) * schatten_norm(g, qs)) * (1 + 1e-12));
    }
    CHECK(schatten_norm(g, Exponent(2.0)) <=
          std::sqrt(schatten_norm(g, kInf) * schatten_norm(g, Exponent(1.0))) * (1 + 1e-12));
  }
}

TEST_CASE("dvoretzky band") {
  const auto flat = dvoretzky_band(6, Exponent(2.0), 5, 20, 1);
  CHECK(flat.ratio.min == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(flat.ratio.max == doctest::Approx(1.0).epsilon(1e-14));

  const auto r = dvoretzky_band(16, Exponent(4.0), critical_dimension(16, Exponent(4.0)), 50, 2);
  CHECK(r.ratio.min <= r.ratio.median);
  CHECK(r.ratio.median <= r.ratio.max);
  CHECK(r.nuclear.min <= r.nuclear.median);
  CHECK(r.nuclear.median <= r.nuclear.max);
  CHECK(r.k == 6);

  // a coordinate member leaves the band: rho(e_11) = sqrt(N) for q = inf
  const int n = 9;
  const double rho = std::pow(n, 0.5) * schatten_norm(matrix_unit(n, 0, 0), kInf) /
                     schatten_norm(matrix_unit(n, 0, 0), Exponent(2.0));
  CHECK(rho == doctest::Approx(3.0));

  CHECK(critical_dimension(32, Exponent(4.0)) == 18);
  CHECK(critical_dimension(32, kInf) == 3);
  CHECK_THROWS_AS(dvoretzky_band(4, Exponent(1.0), 2, 5, 0), UsageError);
}
