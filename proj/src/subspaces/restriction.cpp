#include "subspaces/restriction.hpp"

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

constexpr double kArmijo = 1e-4;
using detail::log_norm;
using detail::schedule;
using detail::Surrogate;

struct Evaluation {
  double smoothed;
  Vector gradient;  // with respect to coefficients
};

class Objective {
 public:
  Objective(const MatrixSubspace& s, Surrogate num, Surrogate den, double eps_num, double eps_den)
      : s_(s), num_(num), den_(den), eps_num_(eps_num), eps_den_(eps_den) {}

  double value(const Vector& c) const {
    const Vector sv = detail::singular_values_unchecked(s_.member(c));
    if (sv(0) == 0.0) return -std::numeric_limits<double>::infinity();
    return log_norm(sv, num_, eps_num_, nullptr) - log_norm(sv, den_, eps_den_, nullptr);
  }

  Evaluation evaluate(const Vector& c) const {
    const SVDFactors f = detail::svd_unchecked(s_.member(c));
    Evaluation e;
    e.gradient = Vector::Zero(c.size());
    if (f.singular(0) == 0.0) {
      e.smoothed = -std::numeric_limits<double>::infinity();
      return e;
    }
    Vector gn, gd;
    e.smoothed = log_norm(f.singular, num_, eps_num_, &gn) - log_norm(f.singular, den_, eps_den_, &gd);
    const SquareMatrix g = f.left * (gn - gd).asDiagonal() * f.right.transpose();
    e.gradient = s_.basis().transpose() * vectorize(g);
    return e;
  }

 private:
  const MatrixSubspace& s_;
  Surrogate num_, den_;
  double eps_num_, eps_den_;
};

struct StartOutcome {
  Vector best;
  double best_value = -1.0;
  long long iterations = 0;
};

// Quasi-Newton ascent on the 0-homogeneous smoothed objective. Because the
// objective ignores scale, BFGS runs directly in coefficient space; the
// iterate is renormalized (and the curvature model reset) only when its
// length drifts.
StartOutcome ascend(const MatrixSubspace& s, const Exponent& p, const Exponent& q, Vector c,
                    int max_iterations) {
  StartOutcome out;
  auto record = [&](const Vector& x) {
    const double v = schatten_ratio(s.member(x.normalized()), p, q);
    if (v > out.best_value) {
      out.best_value = v;
      out.best = x.normalized();
    }
  };
  c.normalize();
  record(c);
  if (s.dim() == 1) return out;

  const auto num_phases = schedule(q);
  const auto den_phases = schedule(p);
  const std::size_t phases = std::max(num_phases.size(), den_phases.size());
  const int per_phase = (max_iterations + static_cast<int>(phases) - 1) / static_cast<int>(phases);
  int budget = max_iterations;
  const Eigen::Index m = c.size();

  for (std::size_t ph = 0; ph < phases && budget > 0; ++ph) {
    const Surrogate sn = num_phases[std::min(ph, num_phases.size() - 1)];
    const Surrogate sd = den_phases[std::min(ph, den_phases.size() - 1)];
    c.normalize();
    const double top = detail::singular_values_unchecked(s.member(c))(0);
    const Objective f(s, sn, sd, sn.smoothing * top, sd.smoothing * top);

    Evaluation cur = f.evaluate(c);
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m);
    bool fresh = true;
    int stalls = 0;
    for (int it = 0; it < per_phase && budget > 0; ++it, --budget) {
      ++out.iterations;
      const double gnorm = cur.gradient.norm();
      if (!(gnorm * c.norm() > 1e-13) || !std::isfinite(gnorm)) break;
      Vector d = h * cur.gradient;
      double slope = cur.gradient.dot(d);
      if (!(slope > 0.0)) {
        h.setIdentity();
        fresh = true;
        d = cur.gradient;
        slope = gnorm * gnorm;
      }
      double t = std::min(1.0, 0.2 * c.norm() / d.norm());
      bool moved = false;
      Vector next;
      double next_value = 0.0;
      for (int bt = 0; bt < 50; ++bt) {
        next = c + t * d;
        next_value = f.value(next);
        if (next_value >= cur.smoothed + kArmijo * t * slope) {
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
      const Evaluation nxt = f.evaluate(next);
      const Vector step = next - c;
      const Vector y = cur.gradient - nxt.gradient;  // curvature of -F
      const double sy = step.dot(y);
      if (sy > 1e-14 * step.norm() * y.norm()) {
        if (fresh) h *= sy / y.squaredNorm();
        const double rho = 1.0 / sy;
        const Vector hy = h * y;
        h += ((1.0 + rho * y.dot(hy)) * rho) * step * step.transpose() -
             rho * (hy * step.transpose() + step * hy.transpose());
        fresh = false;
      }
      stalls = (nxt.smoothed - cur.smoothed <= 1e-15 * std::max(1.0, std::abs(cur.smoothed)))
                   ? stalls + 1
                   : 0;
      c = next;
      cur = nxt;
      record(c);
      if (stalls >= 5) break;
      const double len = c.norm();
      if (len > 4.0 || len < 0.25) {
        c /= len;
        cur = f.evaluate(c);
        h.setIdentity();
        fresh = true;
      }
    }
  }
  return out;
}

}  // namespace

double schatten_ratio(const SquareMatrix& a, const Exponent& p, const Exponent& q) {
  const Vector s = singular_values(a);
  const double den = lp_norm(s, p);
  if (den == 0.0) return 0.0;
  return lp_norm(s, q) / den;
}

RestrictionResult restriction_norm(const MatrixSubspace& s, const Exponent& p, const Exponent& q,
                                   const RestrictionOptions& options) {
  require(options.restarts >= 1, "restarts must be at least 1");
  require(options.max_iterations >= 1, "iteration cap must be at least 1");
  for (const Vector& w : options.warm_starts)
    require(w.size() == s.dim(), "warm start length must equal the subspace dimension");

  const std::size_t warm = options.warm_starts.size();
  const std::size_t total = warm + static_cast<std::size_t>(options.restarts);
  std::vector<StartOutcome> outcomes(total);
  parallel_for(total, [&](std::size_t i) {
    Vector c;
    if (i < warm && options.warm_starts[i].norm() > 0.0) {
      c = options.warm_starts[i];
    } else {
      RandomStream stream(options.seed, Salt::RestrictionStart, i);
      c = gaussian_matrix(stream, s.dim(), 1).col(0);
    }
    outcomes[i] = ascend(s, p, q, std::move(c), options.max_iterations);
  });

  RestrictionResult r{{SquareMatrix(), -1.0, p, q}, Vector(), {}, -1, 0};
  r.start_values.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    const StartOutcome& o = outcomes[i];
    r.start_values.push_back(o.best_value);
    r.iterations += o.iterations;
    if (std::isfinite(o.best_value) && o.best_value > r.witness.value) {
      r.witness.value = o.best_value;
      r.coefficients = o.best;
      r.best_start = static_cast<int>(i);
    }
  }
  if (r.best_start < 0) throw NumericalError("ratio maximization produced no finite value");
  r.witness.matrix = s.member(r.coefficients);
  return r;
}

}  // namespace sw
