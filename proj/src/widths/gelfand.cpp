#include "widths/gelfand.hpp"

#include <algorithm>
#include <cmath>

#include "linalg/smooth.hpp"
#include "linalg/svd.hpp"
#include "multiplicity/flat_top.hpp"
#include "randmat/rng.hpp"
#include "runtime/error.hpp"
#include "subspaces/restriction.hpp"

namespace sw {
namespace {

struct Inner {
  double value = 0.0;
  SquareMatrix witness;
  long long iterations = 0;
};

Inner inner_value(const MatrixSubspace& s, const Exponent& p, const Exponent& q, int restarts,
                  std::uint64_t seed, const std::vector<Vector>& warm) {
  RestrictionOptions o;
  o.restarts = restarts;
  o.seed = seed;
  o.warm_starts = warm;
  const RestrictionResult r = restriction_norm(s, p, q, o);
  Inner in{r.witness.value, r.witness.matrix, r.iterations};
  if (q < p) {
    const int k = max_flat_multiplicity(s.order(), s.dim());
    if (k >= 2) {
      try {
        const FlatTopWitness w = flat_top_ratio_witness(s, p, q, k, 1e-8, seed);
        if (w.witness.value > in.value) {
          in.value = w.witness.value;
          in.witness = w.witness.matrix;
        }
      } catch (const NumericalError&) {
        // the multistart value stands on its own
      }
    }
  }
  return in;
}

// Gradient of log(||A||_q / ||A||_p) in the full matrix space.
SquareMatrix log_ratio_gradient(const SquareMatrix& a, const Exponent& p, const Exponent& q) {
  const SVDFactors f = detail::svd_unchecked(a);
  auto exact = [](const Exponent& e) { return detail::Surrogate{e.is_infinite() ? 0.0 : e.value(), 0.0}; };
  Vector gq, gp;
  detail::log_norm(f.singular, exact(q), 0.0, &gq);
  detail::log_norm(f.singular, exact(p), 0.0, &gp);
  return f.left * (gq - gp).asDiagonal() * f.right.transpose();
}

// Rotates the plane spanned by the unit vectors w (inside S) and z (orthogonal
// to S) by angle; the basis stays orthonormal.
Eigen::MatrixXd rotate(const Eigen::MatrixXd& basis, const Vector& w, const Vector& z, double angle) {
  const Eigen::RowVectorXd a = w.transpose() * basis;
  return basis + (std::cos(angle) - 1.0) * w * a + std::sin(angle) * z * a;
}

Eigen::MatrixXd complement_part(const Eigen::MatrixXd& basis, const Vector& v) {
  return v - basis * (basis.transpose() * v);
}

// Span of Haar orthogonal matrices, topped up with more draws (and finally
// Gaussian directions) until it reaches dimension m.
MatrixSubspace orthogonal_span(int order, int m, std::uint64_t key) {
  RandomStream stream(key);
  const int n2 = order * order;
  Eigen::MatrixXd basis(n2, m);
  int have = 0;
  for (int draw = 0; have < m && draw < 4 * m + 8; ++draw) {
    Vector v = draw < 4 * m ? vectorize(haar_orthogonal(stream, order))
                            : Vector(gaussian_matrix(stream, n2, 1).col(0));
    for (int pass = 0; pass < 2; ++pass) v -= basis.leftCols(have) * (basis.leftCols(have).transpose() * v);
    if (v.norm() > 1e-8 * std::sqrt(static_cast<double>(order))) basis.col(have++) = v.normalized();
  }
  while (have < m) {
    Vector v = gaussian_matrix(stream, n2, 1).col(0);
    for (int pass = 0; pass < 2; ++pass) v -= basis.leftCols(have) * (basis.leftCols(have).transpose() * v);
    if (v.norm() > 1e-8) basis.col(have++) = v.normalized();
  }
  return MatrixSubspace(order, basis);
}

}  // namespace

EstimateReport gelfand_upper_from_subspace(const MatrixSubspace& s, const Exponent& p,
                                           const Exponent& q, int restarts, std::uint64_t seed) {
  RestrictionOptions o;
  o.restarts = restarts;
  o.seed = seed;
  const RestrictionResult r = restriction_norm(s, p, q, o);
  const int n = s.codim() + 1;
  return {{WidthKind::Gelfand, p, q, s.order(), n},
          r.witness.value,
          Direction::Heuristic,
          r.witness.matrix,
          s,
          restarts,
          r.iterations,
          seed,
          r.start_values,
          "multistart inner maximum over the given subspace"};
}

MatrixSubspace coordinate_candidate(int order, int n) {
  require(order >= 1, "N must be positive");
  require(n >= 1 && n <= order * order, "n must lie in [1, N^2]");
  const int k = (n - 1) / order;
  const int r = (n - 1) - k * order;
  std::vector<SquareMatrix> units;
  for (int j = 0; j < order; ++j)
    for (int i = k; i < order; ++i)
      if (i > k || j >= r) units.push_back(matrix_unit(order, i, j));
  return from_spanning_set(units);
}

EstimateReport gelfand_minimax(const WidthQuery& query, const MinimaxOptions& options) {
  require(query.kind == WidthKind::Gelfand, "gelfand_minimax needs a Gelfand query");
  require(query.p.has_value(), "a Gelfand query needs p");
  require(options.outer_iters >= 0, "outer iterations must be nonnegative");
  require(options.restarts >= 1 && options.screening_restarts >= 1, "restarts must be positive");
  require(options.random_candidates >= 0, "random candidate count must be nonnegative");
  const Exponent p = *query.p, q = query.q;
  const int order = query.order, n = query.n;
  require(order >= 1, "N must be positive");
  require(n >= 1 && n <= order * order, "n must lie in [1, N^2]");
  const int n2 = order * order;
  const int m = n2 - n + 1;
  const std::uint64_t seed = options.seed;
  auto inner_seed = [&](std::uint64_t index) { return derive_key(seed, Salt::MinimaxOuter, index); };

  std::vector<MatrixSubspace> candidates{coordinate_candidate(order, n)};
  if (n > 1) {
    if (p < q)
      for (int j = 0; j < 2; ++j)
        candidates.push_back(orthogonal_span(order, m, derive_key(seed, Salt::MinimaxOuter, 100 + j)));
    for (int j = 0; j < options.random_candidates; ++j)
      candidates.push_back(random_subspace(order, m, derive_key(seed, Salt::MinimaxOuter, 200 + j)));
  }

  EstimateReport rep{query, 0.0, Direction::Heuristic, std::nullopt, std::nullopt,
                     options.restarts, 0, seed, {}, ""};
  std::size_t best_index = 0;
  Inner best;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const Inner in = inner_value(candidates[k], p, q, options.screening_restarts, inner_seed(1000 + k), {});
    rep.start_values.push_back(in.value);
    rep.iterations += in.iterations;
    if (k == 0 || in.value < best.value) {
      best = in;
      best_index = k;
    }
  }

  // Local refinement: rotate the witness out of the subspace, towards lower
  // ratio where the gradient allows, otherwise at random.
  Eigen::MatrixXd basis = candidates[best_index].basis();
  Inner current = best;
  double angle = 0.3;
  bool random_move = false;
  int accepted = 0;
  if (m < n2) {
    for (int it = 0; it < options.outer_iters; ++it) {
      const Vector w = vectorize(current.witness).normalized();
      Vector z;
      if (!random_move) z = -complement_part(basis, vectorize(log_ratio_gradient(current.witness, p, q)));
      if (random_move || !(z.norm() > 1e-10)) {
        RandomStream stream(seed, Salt::MinimaxOuter, 5000 + static_cast<std::uint64_t>(it));
        z = complement_part(basis, gaussian_matrix(stream, n2, 1).col(0));
      }
      z = complement_part(basis, z);
      if (!(z.norm() > 1e-12)) break;
      z.normalize();
      const Eigen::MatrixXd trial = rotate(basis, w, z, angle);
      const MatrixSubspace s(order, trial);
      const Vector warm = trial.transpose() * (basis * (basis.transpose() * w));
      const Inner in = inner_value(s, p, q, options.screening_restarts,
                                   inner_seed(10000 + static_cast<std::uint64_t>(it)), {warm});
      rep.iterations += in.iterations;
      if (in.value < current.value * (1.0 - 1e-9)) {
        basis = trial;
        current = in;
        ++accepted;
        angle = std::min(0.6, angle * 1.5);
        random_move = false;
      } else {
        angle *= 0.5;
        if (angle < 1e-3) {
          angle = 0.3;
          random_move = !random_move;
        }
      }
    }
  }

  // Final evaluations with the full restart budget; report the smaller.
  std::vector<MatrixSubspace> finalists{candidates[best_index]};
  if (accepted > 0) finalists.emplace_back(order, basis);
  bool first = true;
  for (std::size_t k = 0; k < finalists.size(); ++k) {
    const Vector warm = k == 0 ? finalists[k].coefficients(best.witness)
                               : finalists[k].coefficients(current.witness);
    const Inner in = inner_value(finalists[k], p, q, options.restarts, inner_seed(20000 + k), {warm});
    rep.iterations += in.iterations;
    if (first || in.value < rep.value) {
      rep.value = in.value;
      rep.witness = in.witness;
      rep.subspace = finalists[k];
      first = false;
    }
  }
  rep.note = std::to_string(candidates.size()) + " candidate subspaces, " + std::to_string(accepted) +
             " accepted refinement moves";
  return rep;
}

std::vector<EstimateReport> gelfand_profile(const Exponent& p, const Exponent& q, int order,
                                            const MinimaxOptions& options) {
  require(order >= 1, "N must be positive");
  std::vector<EstimateReport> out;
  for (int n = 1; n <= order * order; ++n) {
    EstimateReport r = gelfand_minimax({WidthKind::Gelfand, p, q, order, n}, options);
    if (!out.empty() && out.back().value < r.value) {
      // a subspace of smaller codimension also qualifies for c_n
      const EstimateReport& prev = out.back();
      r.value = prev.value;
      r.witness = prev.witness;
      r.subspace = prev.subspace;
      r.note += "; monotone post-pass took the value at n - 1";
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sw
