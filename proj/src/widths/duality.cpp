#include "widths/duality.hpp"

#include <algorithm>
#include <cmath>

#include "linalg/norms.hpp"
#include "randmat/rng.hpp"
#include "runtime/error.hpp"
#include "widths/kolmogorov.hpp"

namespace sw {

FiniteTestSet unit_ball_net(int order, const Exponent& t, int samples, std::uint64_t seed) {
  require(order >= 1, "N must be positive");
  require(samples >= 1, "net size must be positive");
  FiniteTestSet set{order, {}, SetProvenance::Custom, std::nullopt};
  set.members.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    RandomStream stream(seed, Salt::DualityNet, static_cast<std::uint64_t>(i));
    const SquareMatrix u = haar_orthogonal(stream, order);
    const SquareMatrix v = haar_orthogonal(stream, order);
    Vector sigma = Vector::Zero(order);
    if (t == Exponent(1.0)) {
      sigma(0) = 1.0;
    } else if (t.is_infinite()) {
      sigma.setOnes();
    } else {
      for (int k = 0; k < order; ++k) sigma(k) = std::abs(stream.normal());
      sigma /= lp_norm(sigma, t);
    }
    set.members.push_back(u * sigma.asDiagonal() * v.transpose());
  }
  return set;
}

DualityReport duality_gap(const Exponent& p, const Exponent& q, int order, int n,
                          const DualityOptions& options) {
  const Exponent one(1.0);
  if (p < one || q < one) throw UsageError("duality needs p, q >= 1 (Banach range)");
  EstimateReport gelfand = gelfand_minimax({WidthKind::Gelfand, p, q, order, n}, options.gelfand);

  const Exponent q_dual = conjugate_exponent(q), p_dual = conjugate_exponent(p);
  const FiniteTestSet net = unit_ball_net(order, q_dual, options.net_samples, options.gelfand.seed);
  KolmogorovOptions ko;
  ko.outer_iters = options.kolmogorov_outer_iters;
  ko.random_candidates = options.kolmogorov_random_candidates;
  ko.seed = options.gelfand.seed;
  if (n > 1 && gelfand.subspace) ko.warm_subspaces.push_back(orthogonal_complement(*gelfand.subspace));
  DualityReport rep{std::move(gelfand),
                    kolmogorov_finite_set(net, {KolmogorovTarget::Kind::Schatten, p_dual}, n, ko), 0.0};
  rep.kolmogorov.query.p = q_dual;
  rep.kolmogorov.note += "; net of " + std::to_string(options.net_samples) +
                         " extreme directions, so the value can undershoot";

  const double c = rep.gelfand.value, d = rep.kolmogorov.value;
  rep.relative_gap = std::max(c, d) > 0.0 ? std::abs(c - d) / std::max(c, d) : 0.0;
  return rep;
}

}  // namespace sw
