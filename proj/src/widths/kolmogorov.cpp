#include "widths/kolmogorov.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>

#include "linalg/norms.hpp"
#include "linalg/smooth.hpp"
#include "linalg/svd.hpp"
#include "randmat/rng.hpp"
#include "runtime/error.hpp"
#include "runtime/parallel.hpp"

namespace sw {
namespace {

using detail::log_norm;
using detail::Surrogate;

constexpr int kPhaseIterations = 100;
constexpr double kRelativeTolerance = 1e-7;
constexpr double kActiveFraction = 1e-3;

bool frobenius_target(const KolmogorovTarget& t) { return t.s == Exponent(2.0); }

// log of the surrogate target norm of r, with its gradient with respect to r.
double log_target(const SquareMatrix& r, const KolmogorovTarget& t, const Surrogate& g, double eps,
                  SquareMatrix* grad) {
  if (t.kind == KolmogorovTarget::Kind::Schatten) {
    if (!grad) {
      const Vector sv = detail::singular_values_unchecked(r);
      if (sv(0) == 0.0) return -std::numeric_limits<double>::infinity();
      return log_norm(sv, g, eps, nullptr);
    }
    const SVDFactors f = detail::svd_unchecked(r);
    if (f.singular(0) == 0.0) {
      *grad = SquareMatrix::Zero(r.rows(), r.cols());
      return -std::numeric_limits<double>::infinity();
    }
    Vector gs;
    const double v = log_norm(f.singular, g, eps, &gs);
    *grad = f.left * gs.asDiagonal() * f.right.transpose();
    return v;
  }
  const Vector w = r.colwise().norm().transpose();
  if (w.maxCoeff() == 0.0) {
    if (grad) *grad = SquareMatrix::Zero(r.rows(), r.cols());
    return -std::numeric_limits<double>::infinity();
  }
  Vector gw;
  const double v = log_norm(w, g, eps, grad ? &gw : nullptr);
  if (grad) {
    *grad = SquareMatrix::Zero(r.rows(), r.cols());
    for (Eigen::Index k = 0; k < r.cols(); ++k)
      if (w(k) > 0.0) grad->col(k) = (gw(k) / w(k)) * r.col(k);
  }
  return v;
}

double largest_entry(const SquareMatrix& r, const KolmogorovTarget& t) {
  if (t.kind == KolmogorovTarget::Kind::Schatten) return detail::singular_values_unchecked(r)(0);
  return r.colwise().norm().maxCoeff();
}

SquareMatrix residual(const SquareMatrix& x, const Eigen::MatrixXd& basis, const Vector& c) {
  return x - unvectorize(basis * c, static_cast<int>(x.rows()));
}

// Gradient of the exact target norm at r (a subgradient where it is not
// differentiable).
SquareMatrix norm_gradient(const SquareMatrix& r, const KolmogorovTarget& t) {
  const Surrogate exact{t.s.is_infinite() ? 0.0 : t.s.value(), 0.0};
  SquareMatrix g;
  const double lv = log_target(r, t, exact, 0.0, &g);
  if (!std::isfinite(lv)) return SquareMatrix::Zero(r.rows(), r.cols());
  return std::exp(lv) * g;
}

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& m) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

struct SetEvaluation {
  double value = 0.0;
  std::size_t argmax = 0;
  std::vector<DistanceResult> distances;
};

SetEvaluation evaluate_set(const FiniteTestSet& set, const Eigen::MatrixXd& basis,
                           const KolmogorovTarget& target, const SetEvaluation* previous,
                           const Eigen::MatrixXd* previous_basis) {
  SetEvaluation e;
  e.distances.resize(set.members.size());
  parallel_for(set.members.size(), [&](std::size_t i) {
    std::optional<Vector> warm;
    if (previous)
      warm = Vector(basis.transpose() * (*previous_basis * previous->distances[i].coefficients));
    e.distances[i] = distance_to_subspace(set.members[i], basis, target, warm);
  });
  e.value = -1.0;
  for (std::size_t i = 0; i < e.distances.size(); ++i)
    if (e.distances[i].value > e.value) {
      e.value = e.distances[i].value;
      e.argmax = i;
    }
  return e;
}

}  // namespace

double target_norm(const SquareMatrix& a, const KolmogorovTarget& target) {
  if (target.kind == KolmogorovTarget::Kind::Schatten) return schatten_norm(a, target.s);
  return mixed_norm(a, Exponent(2.0), target.s);
}

DistanceResult distance_to_subspace(const SquareMatrix& x, const Eigen::MatrixXd& basis,
                                    const KolmogorovTarget& target, const std::optional<Vector>& warm) {
  require(target.s >= Exponent(1.0), "the target norm needs s >= 1 (convex distance)");
  require(basis.rows() == x.size(), "basis rows must equal N^2");
  const Eigen::Index d = basis.cols();
  if (d == 0) return {target_norm(x, target), Vector()};

  const Vector projection = basis.transpose() * vectorize(x);
  Vector c = warm && warm->size() == d ? *warm : projection;
  if (frobenius_target(target)) return {target_norm(residual(x, basis, projection), target), projection};
  if (residual(x, basis, projection).norm() <= 1e-15 * x.norm()) return {0.0, projection};

  DistanceResult best{target_norm(residual(x, basis, c), target), c};
  auto record = [&](const Vector& v) {
    const double value = target_norm(residual(x, basis, v), target);
    if (value < best.value) best = {value, v};
    return value;
  };
  record(projection);

  for (const Surrogate& phase : detail::schedule(target.s)) {
    SquareMatrix r = residual(x, basis, c);
    const double eps = phase.smoothing * largest_entry(r, target);
    auto objective = [&](const Vector& v, Vector* grad) {
      const SquareMatrix rv = residual(x, basis, v);
      SquareMatrix g;
      const double lv = log_target(rv, target, phase, eps, grad ? &g : nullptr);
      if (grad) *grad = -(basis.transpose() * vectorize(g));
      return lv;
    };
    Vector g;
    double f = objective(c, &g);
    if (!std::isfinite(f)) return {0.0, c};
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(d, d);
    bool fresh = true;
    int stalls = 0;
    for (int it = 0; it < kPhaseIterations; ++it) {
      if (!(g.norm() > 0.0) || !std::isfinite(g.norm())) break;
      Vector dir = -(h * g);
      double slope = g.dot(dir);
      if (!(slope < 0.0)) {
        h.setIdentity();
        fresh = true;
        dir = -g;
        slope = -g.squaredNorm();
      }
      double t = fresh ? std::min(1.0, 0.5 * r.norm() / dir.norm()) : 1.0;
      bool moved = false;
      Vector next;
      double next_f = 0.0;
      for (int bt = 0; bt < 50; ++bt) {
        next = c + t * dir;
        next_f = objective(next, nullptr);
        if (next_f <= f + 1e-4 * t * slope) {
          moved = true;
          break;
        }
        t *= 0.5;
      }
      if (!moved) {
        if (fresh) break;
        h.setIdentity();
        fresh = true;
        continue;
      }
      if (record(next) == 0.0) return best;
      Vector next_g;
      next_f = objective(next, &next_g);
      const Vector s = next - c;
      const Vector y = next_g - g;
      const double sy = s.dot(y);
      if (sy > 1e-14 * s.norm() * y.norm()) {
        if (fresh) h *= sy / y.squaredNorm();
        const double rho = 1.0 / sy;
        const Vector hy = h * y;
        h += ((1.0 + rho * y.dot(hy)) * rho) * s * s.transpose() -
             rho * (hy * s.transpose() + s * hy.transpose());
        fresh = false;
      }
      stalls = f - next_f < kRelativeTolerance ? stalls + 1 : 0;
      c = next;
      f = next_f;
      g = next_g;
      r = residual(x, basis, c);
      if (stalls >= 3) break;
    }
    c = best.coefficients;
  }
  return best;
}

EstimateReport kolmogorov_finite_set(const FiniteTestSet& set, const KolmogorovTarget& target, int n,
                                     const KolmogorovOptions& options) {
  require(!set.members.empty(), "the test set must be nonempty");
  require(target.s >= Exponent(1.0), "the target norm needs s >= 1 (convex distance)");
  require(options.outer_iters >= 0, "outer iterations must be nonnegative");
  require(options.random_candidates >= 0, "random candidate count must be nonnegative");
  const int order = set.order;
  const int n2 = order * order;
  require(n >= 1 && n <= n2, "n must lie in [1, N^2]");
  for (const auto& m : set.members)
    require(m.rows() == order && m.cols() == order, "test set members must share the order N");
  const int d = n - 1;

  EstimateReport rep{{WidthKind::Kolmogorov, std::nullopt, target.s, order, n},
                     0.0, Direction::Heuristic, std::nullopt, std::nullopt, 0, 0, options.seed, {}, ""};
  rep.note = std::to_string(set.members.size()) + " test members, target " +
             (target.kind == KolmogorovTarget::Kind::Schatten ? "S_" : "l_") + target.s.to_string() +
             (target.kind == KolmogorovTarget::Kind::Mixed ? "(l_2)" : "");

  if (d == 0) {
    const SetEvaluation e = evaluate_set(set, Eigen::MatrixXd(n2, 0), target, nullptr, nullptr);
    rep.value = e.value;
    rep.witness = set.members[e.argmax];
    return rep;
  }

  // principal span of K; it contains span K whenever rank K <= n - 1
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n2, n2);
  for (const auto& m : set.members) {
    const Vector v = vectorize(m);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(v);
  }
  gram = gram.selfadjointView<Eigen::Lower>();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::MatrixXd principal = eig.eigenvectors().rightCols(d);
  const double top = eig.eigenvalues()(n2 - 1);
  const int rank = static_cast<int>((eig.eigenvalues().array() > 1e-12 * std::max(top, 1e-300)).count());
  if (top == 0.0 || rank <= d) {
    rep.value = 0.0;
    rep.subspace = MatrixSubspace(order, principal);
    rep.note += "; n - 1 >= rank of the set, distance 0";
    return rep;
  }

  std::vector<Eigen::MatrixXd> candidates;
  for (const MatrixSubspace& w : options.warm_subspaces) {
    require(w.order() == order && w.dim() == d, "warm subspaces must have dimension n - 1");
    candidates.push_back(w.basis());
  }
  candidates.push_back(principal);
  {
    // greedy span: repeatedly add the member farthest (in Frobenius) from the span
    Eigen::MatrixXd res(n2, static_cast<Eigen::Index>(set.members.size()));
    for (std::size_t i = 0; i < set.members.size(); ++i) res.col(static_cast<Eigen::Index>(i)) = vectorize(set.members[i]);
    Eigen::MatrixXd greedy(n2, d);
    for (int k = 0; k < d; ++k) {
      Eigen::Index pick = 0;
      res.colwise().norm().maxCoeff(&pick);
      const Vector u = res.col(pick).normalized();
      greedy.col(k) = u;
      res -= u * (u.transpose() * res);
    }
    candidates.push_back(orthonormal_columns(greedy));
  }
  for (int j = 0; j < options.random_candidates; ++j) {
    RandomStream stream(options.seed, Salt::KolmogorovOuter, static_cast<std::uint64_t>(j));
    candidates.push_back(orthonormal_columns(gaussian_matrix(stream, n2, d)));
  }

  Eigen::MatrixXd basis;
  SetEvaluation best;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    SetEvaluation e = evaluate_set(set, candidates[k], target, nullptr, nullptr);
    rep.start_values.push_back(e.value);
    if (k == 0 || e.value < best.value) {
      best = std::move(e);
      basis = candidates[k];
    }
  }
  rep.restarts = static_cast<int>(candidates.size());

  double angle = 0.2;
  bool random_move = false;
  for (int it = 0; it < options.outer_iters && best.value > 0.0; ++it) {
    ++rep.iterations;
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n2, d);
    if (!random_move) {
      for (std::size_t i = 0; i < best.distances.size(); ++i) {
        const DistanceResult& dr = best.distances[i];
        if (dr.value < best.value * (1.0 - kActiveFraction)) continue;
        const SquareMatrix r = residual(set.members[i], basis, dr.coefficients);
        grad -= vectorize(norm_gradient(r, target)) * dr.coefficients.transpose();
      }
      grad -= basis * (basis.transpose() * grad);
    }
    Eigen::MatrixXd dir;
    if (!random_move && grad.norm() > 1e-14) {
      dir = -grad / grad.norm();
    } else {
      RandomStream stream(options.seed, Salt::KolmogorovOuter, 1000000u + static_cast<std::uint64_t>(it));
      dir = gaussian_matrix(stream, n2, d);
      dir -= basis * (basis.transpose() * dir);
      if (dir.norm() == 0.0) break;
      dir /= dir.norm();
    }
    const Eigen::MatrixXd trial = orthonormal_columns(basis + angle * dir);
    SetEvaluation e = evaluate_set(set, trial, target, &best, &basis);
    if (e.value < best.value * (1.0 - 1e-12)) {
      best = std::move(e);
      basis = trial;
      angle = std::min(0.5, angle * 1.5);
      random_move = false;
    } else {
      angle *= 0.5;
      if (angle < 1e-3) {
        angle = 0.2;
        random_move = !random_move;
      }
    }
  }

  rep.value = best.value;
  rep.subspace = MatrixSubspace(order, basis);
  rep.witness = set.members[best.argmax];
  return rep;
}

}  // namespace sw
