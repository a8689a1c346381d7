#include <doctest.h>

#include <cmath>
#include <sstream>

#include "linalg/norms.hpp"
#include "runtime/error.hpp"
#include "subspaces/restriction.hpp"
#include "subspaces/subspace.hpp"
#include "support.hpp"

using namespace sw;

namespace {
const Exponent kInf = Exponent::infinity();

MatrixSubspace full_space(int n) { return coordinate_row_subspace(n, 0); }
}  // namespace

TEST_CASE("spanning sets") {
  auto s = from_spanning_set({matrix_unit(3, 0, 0)});
  CHECK(s.dim() == 1);
  CHECK(s.codim() == 8);
  s = from_spanning_set({matrix_unit(3, 0, 0), 2.0 * matrix_unit(3, 0, 0)});
  CHECK(s.dim() == 1);
  std::vector<SquareMatrix> all;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) all.push_back(matrix_unit(2, i, j));
  s = from_spanning_set(all);
  CHECK(s.dim() == 4);
  CHECK(s.codim() == 0);
  CHECK_THROWS_AS(from_spanning_set({SquareMatrix::Zero(2, 2)}), InputError);
  CHECK_THROWS_AS(from_spanning_set({}), UsageError);
}

TEST_CASE("coordinate-row subspaces") {
  CHECK(coordinate_row_subspace(3, 0).codim() == 0);
  CHECK(coordinate_row_subspace(3, 1).codim() == 3);
  CHECK(coordinate_row_subspace(5, 2).dim() == 15);
  CHECK_THROWS_AS(coordinate_row_subspace(3, 3), UsageError);
  CHECK_THROWS_AS(coordinate_row_subspace(3, -1), UsageError);

  const auto s = coordinate_row_subspace(4, 2);
  std::mt19937_64 gen(1);
  for (int t = 0; t < 10; ++t) {
    const Vector c = testing_support::random_matrix(gen, s.dim(), 1).col(0);
    const SquareMatrix a = s.member(c);
    CHECK(a.topRows(2).cwiseAbs().maxCoeff() == 0.0);
    Eigen::FullPivLU<SquareMatrix> lu(a);
    CHECK(lu.rank() <= 2);
  }
}

TEST_CASE("random subspaces are seeded and orthonormal") {
  const auto a = random_subspace(4, 5, 7);
  const auto b = random_subspace(4, 5, 7);
  CHECK(a.basis() == b.basis());
  CHECK(gram_deviation(a.basis()) <= 1e-8);
  CHECK(random_subspace(4, 5, 8).basis() != a.basis());
  CHECK(random_subspace(3, 9, 123).codim() == 0);
  CHECK_THROWS_AS(random_subspace(3, 10, 0), UsageError);
  CHECK_THROWS_AS(random_subspace(3, 0, 0), UsageError);
}

TEST_CASE("projection") {
  const auto s = random_subspace(3, 4, 1);
  std::mt19937_64 gen(2);
  const SquareMatrix a = testing_support::random_matrix(gen, 3, 3);
  const SquareMatrix pa = project(a, s);
  CHECK((project(pa, s) - pa).norm() <= 1e-12);
  CHECK(pa.norm() <= a.norm());
  CHECK(containment_residual(pa, s) <= 1e-12);

  const auto comp = orthogonal_complement(s);
  CHECK(comp.dim() == 5);
  CHECK((s.basis().transpose() * comp.basis()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(project(comp.basis_matrix(0), s).norm() <= 1e-12);

  CHECK(project(matrix_unit(3, 0, 0), coordinate_row_subspace(3, 1)).norm() == 0.0);
}

TEST_CASE("subspace file round trip and warnings") {
  const auto s = random_subspace(3, 4, 99);
  std::stringstream buf;
  write_subspace(buf, s);
  const auto r = read_subspace(buf);
  CHECK(r.subspace.dim() == 4);
  CHECK_FALSE(r.warning.has_value());
  CHECK((r.subspace.basis() - s.basis()).cwiseAbs().maxCoeff() <= 1e-12);

  std::istringstream skew("2 2\n2\n1,0\n0,0\n2\n1,1\n0,0\n");
  const auto w = read_subspace(skew);
  CHECK(w.subspace.dim() == 2);
  CHECK(w.warning.has_value());

  std::istringstream bad("2 5\n");
  CHECK_THROWS_AS(read_subspace(bad), InputError);
}

TEST_CASE("restriction norm oracles") {
  RestrictionOptions opts;
  opts.restarts = 8;
  opts.seed = 3;

  const auto line = from_spanning_set({matrix_unit(3, 1, 2)});
  for (auto [p, q] : {std::pair{2.0, 1.0}, {0.5, 3.0}}) {
    const auto r = restriction_norm(line, Exponent(p), Exponent(q), opts);
    CHECK(r.witness.value == doctest::Approx(1.0).epsilon(1e-12));
  }

  for (int n : {2, 3, 4}) {
    const auto r = restriction_norm(full_space(n), kInf, Exponent(1.0), opts);
    CHECK(r.witness.value == doctest::Approx(n).epsilon(1e-6));
    // p <= q: rank-one members maximize
    for (auto [p, q] : {std::pair{1.0, 2.0}, {0.5, 1.0}, {2.0, 8.0}}) {
      const auto rr = restriction_norm(full_space(n), Exponent(p), Exponent(q), opts);
      CHECK(rr.witness.value == doctest::Approx(1.0).epsilon(1e-5));
      CHECK(rr.witness.value <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("restriction norm witness contract") {
  RestrictionOptions opts;
  opts.restarts = 6;
  opts.seed = 17;
  const auto s = random_subspace(4, 7, 5);
  const auto r = restriction_norm(s, Exponent(3.0), Exponent(0.75), opts);
  CHECK(containment_residual(r.witness.matrix, s) <= 1e-8);
  const double direct = schatten_norm(r.witness.matrix, Exponent(0.75)) /
                        schatten_norm(r.witness.matrix, Exponent(3.0));
  CHECK(testing_support::rel_diff(direct, r.witness.value) <= 1e-9);
  CHECK(r.start_values.size() == 6);
  CHECK(r.start_values[r.best_start] == r.witness.value);
  for (double v : r.start_values) CHECK(v <= r.witness.value);
}

TEST_CASE("coordinate-row restriction equals the Hoelder bound") {
  RestrictionOptions opts;
  opts.restarts = 8;
  for (int n : {3, 4})
    for (int k = 0; k < n; ++k)
      for (auto [p, q] : {std::pair{kInf, Exponent(1.0)}, {Exponent(2.0), Exponent(1.0)},
                          {Exponent(3.0), Exponent(0.5)}}) {
        const double bound = std::pow(n - k, q.reciprocal() - p.reciprocal());
        const auto r = restriction_norm(coordinate_row_subspace(n, k), p, q, opts);
        CHECK(r.witness.value <= bound * (1 + 1e-9));
        CHECK(r.witness.value >= bound * (1 - 1e-4));
        // Hoelder equality witness: identity on the allowed rows
        SquareMatrix d = SquareMatrix::Zero(n, n);
        for (int i = k; i < n; ++i) d(i, i) = 1.0;
        CHECK(schatten_ratio(d, p, q) == doctest::Approx(bound).epsilon(1e-14));
      }
}

TEST_CASE("restriction norm is invariant under rescaling the spanning set") {
  std::mt19937_64 gen(8);
  std::vector<SquareMatrix> mats, scaled;
  for (int i = 0; i < 5; ++i) {
    mats.push_back(testing_support::random_matrix(gen, 3, 3));
    scaled.push_back(0.5 * mats.back());
  }
  RestrictionOptions opts;
  opts.restarts = 4;
  const auto a = restriction_norm(from_spanning_set(mats), Exponent(2.0), Exponent(1.0), opts);
  const auto b = restriction_norm(from_spanning_set(scaled), Exponent(2.0), Exponent(1.0), opts);
  CHECK(std::abs(a.witness.value - b.witness.value) <= 1e-12);
}

TEST_CASE("restriction norm is monotone along nested subspaces") {
  RestrictionOptions opts;
  opts.restarts = 8;
  opts.seed = 4;
  double previous = 0.0;
  for (int k = 3; k >= 0; --k) {
    const auto r = restriction_norm(coordinate_row_subspace(4, k), kInf, Exponent(1.0), opts);
    CHECK(r.witness.value >= previous - 1e-9);
    previous = r.witness.value;
  }
}
