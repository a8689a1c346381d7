#include "report/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "envelopes/envelope.hpp"
#include "linalg/format.hpp"
#include "linalg/norms.hpp"
#include "multiplicity/flat_top.hpp"
#include "randmat/montecarlo.hpp"
#include "randmat/rng.hpp"
#include "report/serialize.hpp"
#include "runtime/error.hpp"
#include "runtime/parallel.hpp"
#include "subspaces/subspace.hpp"
#include "widths/duality.hpp"
#include "widths/gelfand.hpp"
#include "widths/test_sets.hpp"

namespace sw::report {
namespace {

using nlohmann::json;

constexpr std::uint64_t kSeed = 0;
const Exponent kInf = Exponent::infinity();

std::uint64_t key(int criterion, std::uint64_t index) {
  return derive_key(kSeed, Salt::Acceptance, static_cast<std::uint64_t>(criterion) * 100000000ull + index);
}

struct Outcome {
  bool passed;
  std::string detail;
  json artifact;
};

// Tracks the worst value of lhs / rhs - 1 over a family of inequalities
// lhs <= rhs (1 + slack).
struct Slack {
  long long checks = 0;
  long long violations = 0;
  double worst = -1e300;
  void add(double lhs, double rhs, double slack) {
    ++checks;
    const double excess = rhs > 0.0 ? lhs / rhs - 1.0 : (lhs > 0.0 ? 1e300 : 0.0);
    worst = std::max(worst, excess);
    if (lhs > rhs * (1.0 + slack)) ++violations;
  }
  json to_json() const { return {{"checks", checks}, {"violations", violations}, {"worst_excess", worst}}; }
};

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

// 1. Norm inequalities
Outcome norm_inequalities() {
  constexpr double kSlack = 1e-9;
  Slack mixed_upper, mixed_lower, mono, holder, invariance;
  const std::vector<double> upper_q{2.0, 3.0, 4.0, 8.0, HUGE_VAL};
  const std::vector<double> lower_p{1.0, 1.25, 1.5, 2.0};
  const std::vector<double> ladder{0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 8.0, HUGE_VAL};
  struct Triple { double t0, t, t1; };
  const std::vector<Triple> triples{{0.5, 1.0, 2.0}, {1.0, 1.5, 2.0}, {1.0, 2.0, 4.0}, {1.0, 2.0, HUGE_VAL},
                                    {2.0, 3.0, HUGE_VAL}, {0.25, 0.5, 4.0}};
  auto e = [](double v) { return Exponent(v); };

  for (int order = 2; order <= 8; ++order) {
    for (int i = 0; i < 1000; ++i) {
      RandomStream stream(key(1, static_cast<std::uint64_t>(order * 1000 + i)));
      SquareMatrix m;
      switch (i % 3) {
        case 0: m = gaussian_matrix(stream, order, order); break;
        case 1: {
          const int rank = 1 + i % order;
          m = gaussian_matrix(stream, order, rank) * gaussian_matrix(stream, rank, order);
          break;
        }
        default: {
          Vector s(order);
          for (int k = 0; k < order; ++k) s(k) = std::exp(3.0 * stream.normal());
          m = haar_orthogonal(stream, order) * s.asDiagonal() * haar_orthogonal(stream, order);
        }
      }
      for (double q : upper_q) {
        mixed_upper.add(mixed_norm(m, e(2.0), e(q)), schatten_norm(m, e(q)), kSlack);
        mixed_upper.add(mixed_norm_transposed(m, e(2.0), e(q)), schatten_norm(m, e(q)), kSlack);
      }
      for (double p : lower_p) mixed_lower.add(schatten_norm(m, e(p)), mixed_norm(m, e(2.0), e(p)), kSlack);
      for (std::size_t k = 0; k + 1 < ladder.size(); ++k)
        mono.add(schatten_norm(m, e(ladder[k + 1])), schatten_norm(m, e(ladder[k])), kSlack);
      for (const Triple& t : triples) {
        const double theta = (1.0 / t.t0 - 1.0 / t.t) / (1.0 / t.t0 - 1.0 / t.t1);
        holder.add(schatten_norm(m, e(t.t)),
                   std::pow(schatten_norm(m, e(t.t0)), 1.0 - theta) * std::pow(schatten_norm(m, e(t.t1)), theta),
                   kSlack);
      }
      const SquareMatrix rotated = haar_orthogonal(stream, order) * m * haar_orthogonal(stream, order);
      for (double t : {0.5, 1.0, 2.0, 3.0, HUGE_VAL}) {
        const double a = schatten_norm(m, e(t)), b = schatten_norm(rotated, e(t));
        invariance.add(std::abs(a - b) + a, a, kSlack);
      }
    }
  }
  const long long violations =
      mixed_upper.violations + mixed_lower.violations + mono.violations + holder.violations + invariance.violations;
  return {violations == 0,
          std::to_string(mixed_upper.checks + mixed_lower.checks + mono.checks + holder.checks + invariance.checks) +
              " checks on 7000 matrices, " + std::to_string(violations) + " violations",
          {{"mixed_below_schatten", mixed_upper.to_json()},
           {"schatten_below_mixed", mixed_lower.to_json()},
           {"monotonicity", mono.to_json()},
           {"hoelder", holder.to_json()},
           {"unitary_invariance", invariance.to_json()}}};
}

// 2. Pietsch comparison
Outcome pietsch() {
  long long violations = 0;
  double worst = -1e300;
  for (int i = 0; i < 10000; ++i) {
    RandomStream stream(key(2, static_cast<std::uint64_t>(i)));
    const int m = 1 + static_cast<int>(stream.below(20));
    auto draw = [&] {
      return stream.uniform() < 0.15 ? kInf : Exponent(std::exp(std::log(0.05) + stream.uniform() * std::log(400.0)));
    };
    Exponent q = draw(), p = draw();
    while (q == p) p = draw();
    if (p < q) std::swap(p, q);
    std::vector<double> x(static_cast<std::size_t>(m) + 1);
    double head_min = HUGE_VAL;
    for (int k = 0; k < m; ++k) {
      x[k] = std::exp(4.0 * stream.normal());
      head_min = std::min(head_min, x[k]);
    }
    x[m] = stream.uniform() < 0.1 ? 0.0 : (stream.uniform() < 0.1 ? head_min : head_min * stream.uniform());
    const PietschRatios r = pietsch_ratio_compare(x, q, p);
    worst = std::max(worst, r.truncated / r.extended - 1.0);
    // equality cases may differ in the last bit
    if (r.extended < r.truncated * (1.0 - 1e-12)) ++violations;
  }
  return {violations == 0, "10000 sequences, " + std::to_string(violations) + " violations",
          {{"sequences", 10000}, {"violations", violations}, {"worst_shortfall", worst}}};
}

// 3. kappa identity
Outcome kappa_identity(const std::function<long long(int, int)>& kappa_fn) {
  long long checks = 0, failures = 0;
  json first_failure = nullptr;
  for (int n = 1; n <= 64; ++n)
    for (int k = 1; k <= n; ++k) {
      ++checks;
      const long long lhs = static_cast<long long>(n) * n - kappa_fn(k, n);
      const long long rhs = static_cast<long long>(n - k) * (n - k + 2);
      if (lhs != rhs) {
        if (failures == 0) first_failure = {{"N", n}, {"k", k}, {"lhs", lhs}, {"rhs", rhs}};
        ++failures;
      }
    }
  std::string detail = std::to_string(checks) + " pairs (N <= 64), " + std::to_string(failures) + " failures";
  return {failures == 0, detail, {{"checks", checks}, {"failures", failures}, {"first_failure", first_failure}}};
}

// 4. Flat-top certificates
Outcome flat_top_certificates() {
  double spectral = 0.0, excess = 0.0, containment = 0.0;
  long long runs = 0, failures = 0;
  for (int order : {4, 5, 6})
    for (int k = 1; k <= 4; ++k)
      for (int i = 0; i < 20; ++i) {
        ++runs;
        const std::uint64_t kk = key(4, static_cast<std::uint64_t>(order * 1000 + k * 100 + i));
        const MatrixSubspace s = random_subspace(order, static_cast<int>(kappa(k, order)), kk);
        try {
          const MultiplicityCertificate c = construct_flat_top(s, k, 1e-8, kk);
          spectral = std::max(spectral, c.spectral_residual);
          excess = std::max(excess, c.norm_excess);
          containment = std::max(containment, c.containment_residual);
          if (c.spectral_residual > 1e-8 || c.norm_excess > 1e-8 || c.containment_residual > 1e-8) ++failures;
        } catch (const NumericalError&) {
          ++failures;
        }
      }
  return {failures == 0,
          std::to_string(runs) + " constructions, max residuals " + fixed(spectral, 3) + " / " + fixed(excess, 3) +
              " / " + fixed(containment, 3),
          {{"runs", runs},
           {"failures", failures},
           {"max_spectral_residual", spectral},
           {"max_norm_excess", excess},
           {"max_containment_residual", containment}}};
}

// 5. Flat-top ratio floor
Outcome flat_top_floor() {
  const int order = 5;
  long long failures = 0;
  json per_n = json::array();
  for (int n : {1, 5, 13, 21}) {
    const double floor = (order * order - n + 1) / (2.0 * order) * 0.95;
    double lowest = HUGE_VAL;
    for (int i = 0; i < 50; ++i) {
      const std::uint64_t kk = key(5, static_cast<std::uint64_t>(n * 1000 + i));
      const MatrixSubspace s = random_subspace(order, order * order - n + 1, kk);
      try {
        const FlatTopWitness w = flat_top_ratio_witness(s, kInf, Exponent(1.0), 1e-8, kk);
        lowest = std::min(lowest, w.witness.value);
        if (w.witness.value < floor) ++failures;
      } catch (const NumericalError&) {
        ++failures;
      }
    }
    per_n.push_back({{"n", n}, {"floor", floor}, {"min_ratio", lowest}});
  }
  return {failures == 0, "200 witnesses, " + std::to_string(failures) + " below the floor",
          {{"failures", failures}, {"per_n", per_n}}};
}

// 6. Orthogonality identity
Outcome orthogonality() {
  bool ok = true;
  double worst = 0.0;
  json rows = json::array();
  for (int order = 1; order <= 4; ++order)
    for (int r = 1; r <= order; ++r) {
      const OrthogonalityReport rep = orthogonality_check(order, r);
      ok = ok && rep.exact_ok && rep.max_float_deviation <= 1e-14;
      worst = std::max(worst, rep.max_float_deviation);
      rows.push_back(orthogonality_output(rep).json);
    }
  return {ok, "exact for N <= 4, r <= N; max float deviation " + fixed(worst, 3), {{"checks", rows}}};
}

// 7. Endpoint Gelfand oracles
Outcome endpoint_oracles() {
  MinimaxOptions o;
  o.restarts = 256;
  o.seed = kSeed;
  const std::vector<std::pair<Exponent, Exponent>> pairs{{Exponent(1.0), Exponent(2.0)},
                                                         {Exponent(2.0), Exponent(1.0)},
                                                         {Exponent(1.0), kInf},
                                                         {kInf, Exponent(1.0)},
                                                         {Exponent(2.0), Exponent(2.0)}};
  std::vector<EstimateReport> reports;
  long long failures = 0;
  double worst = 0.0;
  for (int order : {2, 3})
    for (const auto& [p, q] : pairs) {
      const double e = q.reciprocal() - p.reciprocal();
      for (int n : {1, order * order}) {
        EstimateReport r = gelfand_minimax({WidthKind::Gelfand, p, q, order, n}, o);
        const double expected = n == 1 ? std::max(1.0, std::pow(order, e)) : (p <= q ? std::pow(order, e) : 1.0);
        const double rel = std::abs(r.value - expected) / expected;
        worst = std::max(worst, rel);
        if (rel > 0.02) ++failures;
        reports.push_back(std::move(r));
      }
    }
  return {failures == 0, "20 endpoint estimates, worst relative error " + fixed(worst, 3),
          {{"failures", failures}, {"worst_relative_error", worst}, {"csv", estimates_output(reports).csv}}};
}

// 8. Envelope sandwich
Outcome envelope_sandwich() {
  MinimaxOptions o;
  o.restarts = 256;
  o.seed = kSeed;
  const int order = 3;
  const auto profile = gelfand_profile(kInf, Exponent(1.0), order, o);
  long long failures = 0;
  json rows = json::array();
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const int n = profile[i].query.n;
    const double m = order * order - n + 1;
    const double lo = m / (2.0 * order) * 0.95, hi = std::ceil(m / order) * 1.05;
    const double v = profile[i].value;
    const bool ok = v >= lo && v <= hi && (i == 0 || v <= profile[i - 1].value);
    if (!ok) ++failures;
    rows.push_back({{"n", n}, {"estimate", v}, {"lower", lo}, {"upper", hi}, {"ok", ok}});
  }
  return {failures == 0, "n = 1..9, " + std::to_string(failures) + " outside the sandwich or increasing",
          {{"rows", rows}, {"csv", estimates_output(profile).csv}}};
}

// 9. Gaussian scaling
Outcome gaussian_scaling() {
  long long failures = 0;
  json rows = json::array();
  std::vector<MonteCarloReport> all;
  for (const Exponent& q : {Exponent(1.0), Exponent(2.0), Exponent(4.0), kInf}) {
    std::vector<MonteCarloReport> reports;
    for (int order : {16, 32, 64}) {
      reports.push_back(estimate_expected_schatten(order, q, 2000, key(9, static_cast<std::uint64_t>(order))));
      if (reports.back().normalized_mean < 0.5 || reports.back().normalized_mean > 2.5) ++failures;
    }
    const double slope = log_log_slope(reports);
    const double target = 0.5 + q.reciprocal();
    if (std::abs(slope - target) > 0.1) ++failures;
    rows.push_back({{"q", q.to_string()}, {"slope", slope}, {"target", target}});
    all.insert(all.end(), reports.begin(), reports.end());
  }
  const MonteCarloReport small = estimate_expected_schatten(2, Exponent(2.0), 2000, key(9, 2));
  const bool chi_ok = std::abs(small.mean - 1.8800) <= 3.0 * small.standard_error;
  if (!chi_ok) ++failures;
  all.push_back(small);
  return {failures == 0,
          "12 means and 4 slopes in range; N=2 mean " + fixed(small.mean, 5) + " +- " +
              fixed(small.standard_error, 2),
          {{"slopes", rows}, {"chi4_ok", chi_ok}, {"csv", gaussian_output(all).csv}}};
}

// 10. Dvoretzky band
Outcome dvoretzky() {
  long long failures = 0;
  json rows = json::array();
  for (const Exponent& q : {Exponent(4.0), kInf}) {
    const int k = critical_dimension(32, q, 0.1);
    const DvoretzkyBandReport r = dvoretzky_band(32, q, k, 200, key(10, q.is_infinite() ? 0 : 4));
    const double spread = r.ratio.max / r.ratio.min, nuclear = r.nuclear.max / r.nuclear.min;
    if (spread > 4.0 || nuclear > 4.0) ++failures;
    rows.push_back({{"q", q.to_string()}, {"k", k}, {"ratio_spread", spread}, {"nuclear_spread", nuclear},
                    {"band", dvoretzky_output(r).json}});
  }
  return {failures == 0, "N=32, q in {4, inf}: " + fixed(rows[0]["ratio_spread"].get<double>(), 3) + ", " +
                             fixed(rows[1]["ratio_spread"].get<double>(), 3) + " (ratio max/min)",
          {{"rows", rows}}};
}

// 11. Envelope algebra
Outcome envelope_algebra() {
  const auto grid = default_exponent_grid();
  long long rows = 0, failures = 0, identities = 0;
  double worst = 0.0;
  auto identity = [&](double got, double expected) {
    ++identities;
    const double rel = std::abs(got - expected) / expected;
    worst = std::max(worst, rel);
    if (!(rel <= 1e-12)) ++failures;
  };
  for (int order = 1; order <= 8; ++order) {
    std::vector<int> ns;
    for (int n = 1; n <= order * order; ++n) ns.push_back(n);
    for (const PhaseRow& r : phase_diagram(grid, grid, order, ns)) {
      ++rows;
      const RegimeRate& e = r.rate;
      const bool ok = e.regime == classify(r.p, r.q, order, r.n) && e.lower > 0.0 && e.lower <= e.upper &&
                      std::isfinite(e.upper) && (!is_theorem_a(e.regime) || e.lower == e.upper);
      if (!ok) ++failures;
      if (r.p == r.q) identity(e.upper, 1.0);
      if (r.n == order * order && r.p <= r.q)
        identity(e.upper, std::pow(order, r.q.reciprocal() - r.p.reciprocal()));
      if (e.regime == Regime::A3) {
        double cd = 0.0;
        for (const auto& ref : reference_rates(r.p, Exponent(2.0), order, r.n))
          if (ref.tag == "CD") cd = ref.rate;
        const double ip = r.p.reciprocal(), iq = r.q.reciprocal();
        identity(e.upper, std::pow(cd, (ip - iq) / (ip - 0.5)));
      }
    }
  }
  return {failures == 0,
          std::to_string(rows) + " grid rows, " + std::to_string(identities) + " identities, worst " + fixed(worst, 3),
          {{"rows", rows}, {"identities", identities}, {"failures", failures}, {"worst_relative", worst}}};
}

// 12. Duality audit
Outcome duality() {
  DualityOptions o;
  o.gelfand.restarts = 256;
  o.gelfand.seed = kSeed;
  long long failures = 0;
  json rows = json::array();
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const DualityReport r = duality_gap(Exponent(1.0), Exponent(2.0), 2, n, o);
    worst = std::max(worst, r.relative_gap);
    if (!(r.relative_gap <= 0.15)) ++failures;
    rows.push_back({{"n", n}, {"c_n", r.gelfand.value}, {"d_n", r.kolmogorov.value}, {"relative_gap", r.relative_gap}});
  }
  return {failures == 0, "(p,q)=(1,2), N=2, n=1..4, worst gap " + fixed(worst, 3), {{"rows", rows}}};
}

struct CriterionSpec {
  int id;
  const char* name;
  double budget;
};

constexpr CriterionSpec kSpecs[] = {{1, "norm-inequalities", 30.0},   {2, "pietsch-comparison", 5.0},
                           {3, "kappa-identity", 0.0},       {4, "flat-top-construction", 120.0},
                           {5, "flat-top-ratio-floor", 0.0}, {6, "orthogonality-identity", 10.0},
                           {7, "endpoint-gelfand", 300.0},   {8, "envelope-sandwich", 0.0},
                           {9, "gaussian-scaling", 120.0},   {10, "dvoretzky-band", 0.0},
                           {11, "envelope-algebra", 0.0},    {12, "duality-audit", 0.0},
                           {13, "reproducibility", 0.0}};

Outcome run(int id, const VerifyOptions& options) {
  switch (id) {
    case 1: return norm_inequalities();
    case 2: return pietsch();
    case 3: return kappa_identity(options.kappa ? options.kappa : [](int k, int n) { return kappa(k, n); });
    case 4: return flat_top_certificates();
    case 5: return flat_top_floor();
    case 6: return orthogonality();
    case 7: return endpoint_oracles();
    case 8: return envelope_sandwich();
    case 9: return gaussian_scaling();
    case 10: return dvoretzky();
    case 11: return envelope_algebra();
    case 12: return duality();
    default: throw UsageError("unknown criterion " + std::to_string(id));
  }
}

CriterionResult timed(int id, const std::function<Outcome()>& body) {
  const CriterionSpec& spec = kSpecs[id - 1];
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const Error& e) {
    o = {false, std::string("raised: ") + e.what(), nullptr};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool passed = o.passed;
  if (spec.budget > 0.0 && seconds > spec.budget) {
    passed = false;
    o.detail += "; over the " + fixed(spec.budget, 3) + " s budget";
  }
  return {id, spec.name, passed, o.detail, seconds, spec.budget, o.artifact};
}

}  // namespace

std::string criterion_name(int id) {
  require(id >= 1 && id <= kCriterionCount, "criterion ids run from 1 to 13");
  return kSpecs[id - 1].name;
}

VerifyReport verify_primary(const VerifyOptions& options) {
  std::vector<int> ids = options.criteria;
  if (ids.empty())
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  for (int id : ids) require(id >= 1 && id <= kCriterionCount, "criterion ids run from 1 to 13");
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  VerifyReport report{{}, true};
  auto emit = [&](CriterionResult r) {
    report.passed = report.passed && r.passed;
    if (options.on_result) options.on_result(r);
    report.criteria.push_back(std::move(r));
  };

  std::map<int, std::string> first_pass;
  {
    const ScopedWorkers one(1);
    for (int id : ids) {
      if (id == 13) continue;
      CriterionResult r = timed(id, [&] { return run(id, options); });
      first_pass[id] = r.artifact.dump();
      emit(std::move(r));
    }
  }
  if (std::find(ids.begin(), ids.end(), 13) != ids.end()) {
    emit(timed(13, [&] {
      std::vector<int> rerun;
      for (int id : ids)
        if (id != 13) rerun.push_back(id);
      if (rerun.empty()) {
        for (int id = 1; id < 13; ++id) rerun.push_back(id);
        const ScopedWorkers one(1);
        for (int id : rerun) first_pass[id] = run(id, options).artifact.dump();
      }
      const ScopedWorkers eight(8);
      std::vector<int> differing;
      for (int id : rerun)
        if (run(id, options).artifact.dump() != first_pass[id]) differing.push_back(id);
      std::string detail = std::to_string(rerun.size()) + " criteria rerun at 1 and 8 workers";
      json diff = json::array();
      for (int id : differing) {
        detail += (diff.empty() ? "; differing: " : ", ") + std::to_string(id);
        diff.push_back(id);
      }
      return Outcome{differing.empty(), detail, {{"rerun", rerun}, {"differing", diff}}};
    }));
  }
  return report;
}

nlohmann::json verdict_json(const VerifyReport& report) {
  json criteria = json::array();
  for (const auto& c : report.criteria)
    criteria.push_back({{"id", c.id},
                        {"name", c.name},
                        {"passed", c.passed},
                        {"detail", c.detail},
                        {"budget_seconds", c.budget_seconds},
                        {"artifact", c.artifact}});
  return {{"suite", "primary"}, {"passed", report.passed}, {"criteria", criteria}};
}

std::string verdict_csv(const VerifyReport& report) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : report.criteria) {
    std::string detail = c.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    rows.push_back({std::to_string(c.id), c.name, c.passed ? "pass" : "fail", detail});
  }
  return to_csv({"id", "name", "verdict", "detail"}, rows);
}

std::string verdict_line(const CriterionResult& r) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << " (" << r.seconds << " s): " << r.detail;
  return s.str();
}

}  // namespace sw::report
