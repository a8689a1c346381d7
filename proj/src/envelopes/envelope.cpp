#include "envelopes/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "runtime/error.hpp"
#include "runtime/parallel.hpp"

namespace sw {
namespace {

// Rates are assembled as logarithms; (1/p) is finite for every exponent and
// zero at infinity.
struct Query {
  double ip;  // 1/p
  double iq;  // 1/q
  double n2;  // N^2
  double n;
  double log_order;
};

Query make_query(const Exponent& p, const Exponent& q, int order, int n) {
  require(order >= 1, "N must be positive");
  require(n >= 1 && static_cast<long long>(n) <= static_cast<long long>(order) * order,
          "n must lie in [1, N^2]");
  const double nn = order;
  return {p.reciprocal(), q.reciprocal(), nn * nn, static_cast<double>(n),
          std::log(nn)};
}

void check_config(const EnvelopeConfig& cfg) {
  require(cfg.small_codim_fraction > 0.0 && cfg.small_codim_fraction < 1.0,
          "small-codimension fraction must lie in (0, 1)");
  require(cfg.critical_dim_fraction > 0.0 && cfg.critical_dim_fraction < 1.0,
          "critical-dimension fraction must lie in (0, 1)");
}

double log_min1(double log_x) { return std::min(0.0, log_x); }

// n >= N^2 - c N^(1 + 2/q) + 1; n = N^2 always qualifies
bool in_large_codim(const Query& x, double c, double iq) {
  return x.n == x.n2 || x.n >= x.n2 - c * std::exp((1.0 + 2.0 * iq) * x.log_order) + 1.0;
}

double log_a1(const Query& x) {
  return std::max(0.0, std::log((x.n2 - x.n + 1.0) / std::exp(x.log_order))) * (x.iq - x.ip);
}
double log_cdk(const Query& x, double exponent) {
  return log_min1(x.log_order - std::log(x.n)) * exponent;
}
double log_cd(const Query& x) {
  return log_min1((1.5 - x.ip) * x.log_order - 0.5 * std::log(x.n));
}
double log_hm_lower(const Query& x) {
  return 0.5 * std::log((x.n2 - x.n + 1.0) / x.n2) * (x.ip - x.iq) / (0.5 - x.iq);
}
double log_strip_upper(const Query& x) {  // N^(-1/p - 1/2) (N^2 - n + 1)^(1/2)
  return (-x.ip - 0.5) * x.log_order + 0.5 * std::log(x.n2 - x.n + 1.0);
}
double log_b3_upper(const Query& x) {
  return (0.5 - x.ip) * x.log_order + 0.5 * std::log((x.n2 - x.n + 1.0) / x.n2);
}

Regime classify_raw(const Exponent& p, const Exponent& q, const Query& x, const EnvelopeConfig& cfg) {
  if (q <= p) return Regime::A1;
  const Exponent one(1.0), two(2.0);
  if (q <= two) return p < one ? Regime::A2 : Regime::A3;
  if (in_large_codim(x, cfg.critical_dim_fraction, x.iq)) return Regime::A6;
  if (x.n <= cfg.small_codim_fraction * x.n2) {
    if (p <= one) return Regime::B1;
    return p <= two ? Regime::A4 : Regime::A5;
  }
  if (p <= one) return Regime::B2;
  if (p >= two && in_large_codim(x, cfg.critical_dim_fraction, x.ip)) return Regime::B3;
  return Regime::Gap;
}

bool label_is_fragile(const Exponent& p, const Exponent& q, const Query& x, const EnvelopeConfig& cfg,
                      Regime label) {
  auto clamp = [](double f) { return std::clamp(f, 1e-9, 1.0 - 1e-9); };
  for (double fs : {0.5, 2.0}) {
    EnvelopeConfig v = cfg;
    v.small_codim_fraction = clamp(cfg.small_codim_fraction * fs);
    if (classify_raw(p, q, x, v) != label) return true;
    v = cfg;
    v.critical_dim_fraction = clamp(cfg.critical_dim_fraction * fs);
    if (classify_raw(p, q, x, v) != label) return true;
  }
  return false;
}

double log_theorem_a(Regime r, const Query& x) {
  switch (r) {
    case Regime::A1: return log_a1(x);
    case Regime::A2: return log_cdk(x, x.ip - x.iq);
    case Regime::A3: return log_cd(x) * (x.ip - x.iq) / (x.ip - 0.5);
    case Regime::A4: return log_cd(x);
    case Regime::A5: return 0.0;
    case Regime::A6: return (x.iq - x.ip) * x.log_order;
    default: throw UsageError("not a Theorem A regime");
  }
}

RegimeRate bracket(Regime r, double log_lo, double log_hi, bool sharp_case, const EnvelopeConfig& cfg,
                   bool fragile) {
  double lo = std::exp(log_lo), hi = std::exp(log_hi);
  bool crossed = false;
  if (lo > hi) {
    // Constants are dropped, so a nominal lower rate may exceed the upper one.
    std::swap(lo, hi);
    crossed = true;
  }
  const bool sharp = sharp_case || lo == hi;
  return {r, lo, hi, sharp, fragile || crossed, cfg};
}

}  // namespace

std::string regime_label(Regime r) {
  switch (r) {
    case Regime::A1: return "TheoremA.1";
    case Regime::A2: return "TheoremA.2";
    case Regime::A3: return "TheoremA.3";
    case Regime::A4: return "TheoremA.4";
    case Regime::A5: return "TheoremA.5";
    case Regime::A6: return "TheoremA.6";
    case Regime::B1: return "TheoremB.1";
    case Regime::B2: return "TheoremB.2";
    case Regime::B3: return "TheoremB.3";
    case Regime::Gap: return "gap";
  }
  return "gap";
}

bool is_theorem_a(Regime r) {
  return r == Regime::A1 || r == Regime::A2 || r == Regime::A3 || r == Regime::A4 ||
         r == Regime::A5 || r == Regime::A6;
}

Regime classify(const Exponent& p, const Exponent& q, int order, int n, const EnvelopeConfig& cfg) {
  check_config(cfg);
  return classify_raw(p, q, make_query(p, q, order, n), cfg);
}

RegimeRate theorem_a_rate(const Exponent& p, const Exponent& q, int order, int n,
                          const EnvelopeConfig& cfg) {
  check_config(cfg);
  const Query x = make_query(p, q, order, n);
  const Regime r = classify_raw(p, q, x, cfg);
  if (!is_theorem_a(r))
    throw UsageError("(p, q, N, n) falls in " + regime_label(r) +
                     ", not a Theorem A case; use theorem_b_bounds");
  const double rate = std::exp(log_theorem_a(r, x));
  return {r, rate, rate, true, label_is_fragile(p, q, x, cfg, r), cfg};
}

RegimeRate theorem_b_bounds(const Exponent& p, const Exponent& q, int order, int n,
                            const EnvelopeConfig& cfg) {
  check_config(cfg);
  const Query x = make_query(p, q, order, n);
  const Exponent one(1.0), two(2.0);
  const bool small = x.n <= cfg.small_codim_fraction * x.n2;
  const bool below_critical = x.n <= x.n2 - cfg.critical_dim_fraction *
                                                std::exp((1.0 + 2.0 * x.iq) * x.log_order) + 1.0;
  const bool fragile = label_is_fragile(p, q, x, cfg, classify_raw(p, q, x, cfg));
  if (p <= one && q >= two && small)
    return bracket(Regime::B1, log_cdk(x, x.ip - x.iq), log_cdk(x, x.ip - 0.5), q == two, cfg,
                   fragile);
  if (p <= one && q >= two && x.n >= cfg.small_codim_fraction * x.n2 && below_critical)
    return bracket(Regime::B2, log_cdk(x, x.ip - x.iq), log_strip_upper(x), false, cfg, fragile);
  if (p >= two && p <= q && in_large_codim(x, cfg.critical_dim_fraction, x.ip) && below_critical) {
    if (p == q) return bracket(Regime::B3, 0.0, 0.0, true, cfg, fragile);
    return bracket(Regime::B3, log_hm_lower(x), log_b3_upper(x), p == two, cfg, fragile);
  }
  throw UsageError("(p, q, N, n) lies outside every Theorem B range");
}

RegimeRate evaluate_envelope(const Exponent& p, const Exponent& q, int order, int n,
                             const EnvelopeConfig& cfg) {
  check_config(cfg);
  const Query x = make_query(p, q, order, n);
  const Regime r = classify_raw(p, q, x, cfg);
  if (is_theorem_a(r)) return theorem_a_rate(p, q, order, n, cfg);
  if (r != Regime::Gap) {
    RegimeRate b = theorem_b_bounds(p, q, order, n, cfg);
    b.regime = r;
    return b;
  }
  const bool fragile = label_is_fragile(p, q, x, cfg, r);
  if (p >= Exponent(2.0))
    return bracket(r, log_hm_lower(x), 0.0, false, cfg, fragile);
  // 1 < p < 2 < q, intermediate n: monotone lower bound c_{N^2}, strip upper bound
  return bracket(r, (x.iq - x.ip) * x.log_order, std::min(0.0, log_strip_upper(x)), false, cfg,
                 fragile);
}

std::vector<ReferenceRate> reference_rates(const Exponent& p, const Exponent& q, int order, int n) {
  const Query x = make_query(p, q, order, n);
  const Exponent one(1.0), two(2.0);
  std::vector<ReferenceRate> out;
  if (p >= one && p <= two && q == two) out.push_back({"CD", std::exp(log_cd(x))});
  if (p == two && q >= two)
    out.push_back({"CD2", std::max(std::exp((x.iq - 0.5) * x.log_order),
                                   std::sqrt((x.n2 - x.n + 1.0) / x.n2))});
  if (p <= one && p < q && q <= two) out.push_back({"CDK", std::exp(log_cdk(x, x.ip - x.iq))});
  if (q >= one && q <= two && q < p) {
    const double rate = x.n <= x.n2 - std::exp(x.log_order) + 1.0
                            ? std::exp(std::log((x.n2 - x.n + 1.0) / std::exp(x.log_order)) * (x.iq - x.ip))
                            : 1.0;
    out.push_back({"HM-upper", rate});
  }
  if (two < p && p < q && q.is_finite()) {
    const double rate = x.n <= x.n2 - std::exp((2.0 * x.iq + 1.0) * x.log_order) + 1.0
                            ? std::exp(log_hm_lower(x))
                            : std::exp((x.iq - x.ip) * x.log_order);
    out.push_back({"HM-lower", rate});
  }
  return out;
}

double interpolation_exponent(const Exponent& p, const Exponent& q) {
  const Exponent one(1.0), two(2.0);
  require(p >= one && p < q && q < two, "interpolation exponent needs 1 <= p < q < 2");
  return (q.reciprocal() - 0.5) / (p.reciprocal() - 0.5);
}

std::vector<PhaseRow> phase_diagram(const std::vector<Exponent>& p_grid,
                                    const std::vector<Exponent>& q_grid, int order,
                                    const std::vector<int>& n_grid, const EnvelopeConfig& cfg) {
  require(!p_grid.empty() && !q_grid.empty() && !n_grid.empty(), "grids must be nonempty");
  check_config(cfg);
  const std::size_t nq = q_grid.size(), nn = n_grid.size();
  const std::size_t total = p_grid.size() * nq * nn;
  std::vector<PhaseRow> rows(total, PhaseRow{Exponent(1.0), Exponent(1.0), order, 1, {}});
  parallel_for(total, [&](std::size_t i) {
    const Exponent& p = p_grid[i / (nq * nn)];
    const Exponent& q = q_grid[(i / nn) % nq];
    const int n = n_grid[i % nn];
    rows[i] = {p, q, order, n, evaluate_envelope(p, q, order, n, cfg)};
  });
  return rows;
}

std::vector<Exponent> default_exponent_grid() {
  std::vector<Exponent> grid;
  for (int k = 0; k <= 18; ++k) grid.emplace_back(0.25 * std::exp2(k / 3.0));
  grid.push_back(Exponent::infinity());
  return grid;
}

}  // namespace sw
