#include "schatten_widths/schatten_widths.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>

#include "envelopes/envelope.hpp"
#include "linalg/exponent.hpp"
#include "linalg/matrix.hpp"
#include "linalg/norms.hpp"
#include "multiplicity/flat_top.hpp"
#include "randmat/montecarlo.hpp"
#include "report/serialize.hpp"
#include "report/verify.hpp"
#include "runtime/error.hpp"
#include "runtime/parallel.hpp"
#include "subspaces/subspace.hpp"
#include "widths/gelfand.hpp"
#include "widths/kolmogorov.hpp"
#include "widths/test_sets.hpp"

#ifndef SW_VERSION
#define SW_VERSION "0.0.0"
#endif

struct sw_matrix {
  sw::SquareMatrix a;
};

struct sw_result {
  std::string csv;
  std::string json;
  double value = NAN;
  int passed = 1;
};

namespace {

thread_local std::string g_last_error;

sw_status fail(sw_status s, const std::string& message) {
  g_last_error = message;
  return s;
}

template <class F>
sw_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const sw::Error& e) {
    switch (e.kind()) {
      case sw::ErrorKind::Usage: return fail(SW_ERR_USAGE, e.what());
      case sw::ErrorKind::Input: return fail(SW_ERR_INPUT, e.what());
      case sw::ErrorKind::Numerical: return fail(SW_ERR_NUMERICAL, e.what());
      case sw::ErrorKind::Verification: return fail(SW_ERR_VERIFICATION, e.what());
    }
    return fail(SW_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SW_ERR_INTERNAL, e.what());
  }
}

void need(const void* p, const char* what) {
  if (!p) throw sw::UsageError(std::string(what) + " must not be NULL");
}

sw::Exponent exponent(double v) { return sw::Exponent(v); }

sw_status emit(const sw::report::Output& o, double value, int passed, sw_result** out) {
  auto* r = new sw_result;
  r->csv = o.csv;
  r->json = o.json.dump();
  r->value = value;
  r->passed = passed;
  *out = r;
  return SW_OK;
}

sw::EnvelopeConfig config(const sw_envelope_config* cfg) {
  sw::EnvelopeConfig c;
  if (cfg) {
    c.small_codim_fraction = cfg->small_codim_fraction;
    c.critical_dim_fraction = cfg->critical_dim_fraction;
  }
  return c;
}

}  // namespace

extern "C" {

const char* sw_version(void) { return SW_VERSION; }

const char* sw_last_error(void) { return g_last_error.c_str(); }

sw_status sw_set_threads(int workers) {
  return guarded([&] {
    sw::set_worker_count(workers);
    return SW_OK;
  });
}

int sw_threads(void) { return sw::worker_count(); }

sw_status sw_parse_exponent(const char* text, double* out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = sw::Exponent::parse(text).as_double();
    return SW_OK;
  });
}

sw_status sw_matrix_read_file(const char* path, sw_matrix** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new sw_matrix{sw::read_matrix_file(path)};
    return SW_OK;
  });
}

sw_status sw_matrix_from_rows(int order, const double* entries, sw_matrix** out) {
  return guarded([&] {
    need(entries, "entries");
    need(out, "out");
    sw::require(order >= 1, "order must be positive");
    sw::SquareMatrix a(order, order);
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j) a(i, j) = entries[i * order + j];
    sw::validate_square(a);
    *out = new sw_matrix{std::move(a)};
    return SW_OK;
  });
}

void sw_matrix_free(sw_matrix* m) { delete m; }

int sw_matrix_order(const sw_matrix* m) { return m ? static_cast<int>(m->a.rows()) : 0; }

sw_status sw_schatten_norm(const sw_matrix* m, double p, double* out) {
  return guarded([&] {
    need(m, "matrix");
    need(out, "out");
    *out = sw::schatten_norm(m->a, exponent(p));
    return SW_OK;
  });
}

sw_status sw_mixed_norm(const sw_matrix* m, double inner, double outer, int transposed, double* out) {
  return guarded([&] {
    need(m, "matrix");
    need(out, "out");
    *out = transposed ? sw::mixed_norm_transposed(m->a, exponent(inner), exponent(outer))
                      : sw::mixed_norm(m->a, exponent(inner), exponent(outer));
    return SW_OK;
  });
}

sw_status sw_kappa(int k, int order, long long* out) {
  return guarded([&] {
    need(out, "out");
    *out = sw::kappa(k, order);
    return SW_OK;
  });
}

const char* sw_result_csv(const sw_result* r) { return r ? r->csv.c_str() : ""; }
const char* sw_result_json(const sw_result* r) { return r ? r->json.c_str() : ""; }
double sw_result_value(const sw_result* r) { return r ? r->value : NAN; }
int sw_result_passed(const sw_result* r) { return r ? r->passed : 0; }
void sw_result_free(sw_result* r) { delete r; }

sw_status sw_norms(const sw_matrix* m, double p, sw_result** out) {
  return guarded([&] {
    need(m, "matrix");
    need(out, "out");
    const sw::Exponent e = exponent(p), two(2.0);
    const double s = sw::schatten_norm(m->a, e);
    const std::vector<sw::report::NormRow> rows{
        {"schatten", e.to_string(), s},
        {"mixed", e.to_string(), sw::mixed_norm(m->a, two, e)},
        {"mixed-transposed", e.to_string(), sw::mixed_norm_transposed(m->a, two, e)}};
    return emit(sw::report::norms_output(m->a, rows), s, 1, out);
  });
}

sw_status sw_flat_top(const sw_flat_top_args* args, sw_result** out) {
  return guarded([&] {
    need(args, "args");
    need(out, "out");
    sw::require(args->order >= 1 && args->k >= 1 && args->k <= args->order, "need 1 <= k <= N");
    const int dim = args->dim > 0 ? args->dim : static_cast<int>(sw::kappa(args->k, args->order));
    const sw::MatrixSubspace s = sw::random_subspace(args->order, dim, args->seed);
    const auto c = sw::construct_flat_top(s, args->k, args->tol, args->seed);
    const bool ok = c.spectral_residual <= args->tol && c.norm_excess <= args->tol &&
                    c.containment_residual <= args->tol;
    return emit(sw::report::flat_top_output(c, args->order, dim, args->seed, args->tol),
                c.spectral_residual, ok, out);
  });
}

sw_status sw_gelfand(const sw_gelfand_args* args, sw_result** out) {
  return guarded([&] {
    need(args, "args");
    need(out, "out");
    sw::MinimaxOptions o;
    o.restarts = args->restarts;
    o.outer_iters = args->outer_iters;
    o.seed = args->seed;
    const sw::Exponent p = exponent(args->p), q = exponent(args->q);
    std::vector<sw::EstimateReport> reports;
    if (args->profile)
      reports = sw::gelfand_profile(p, q, args->order, o);
    else
      reports.push_back(sw::gelfand_minimax({sw::WidthKind::Gelfand, p, q, args->order, args->n}, o));
    return emit(sw::report::estimates_output(reports), reports.back().value, 1, out);
  });
}

sw_status sw_kolmogorov(const sw_kolmogorov_args* args, sw_result** out) {
  return guarded([&] {
    need(args, "args");
    need(out, "out");
    sw::FiniteTestSet set;
    switch (args->set) {
      case SW_SET_VASILEVA: set = sw::vasileva_extreme_points(args->order); break;
      case SW_SET_AVERAGED:
        set = args->samples > 0 ? sw::averaged_set_sample(args->order, args->r, args->samples, args->seed)
                                : sw::averaged_set_enumerate(args->order, args->r);
        break;
      default: throw sw::UsageError("unknown test set");
    }
    sw::require(args->target_kind == SW_TARGET_SCHATTEN || args->target_kind == SW_TARGET_MIXED,
                "unknown target kind");
    const sw::KolmogorovTarget target{args->target_kind == SW_TARGET_MIXED
                                          ? sw::KolmogorovTarget::Kind::Mixed
                                          : sw::KolmogorovTarget::Kind::Schatten,
                                      exponent(args->target)};
    sw::KolmogorovOptions o;
    o.outer_iters = args->outer_iters;
    o.seed = args->seed;
    const sw::EstimateReport r = sw::kolmogorov_finite_set(set, target, args->n, o);
    return emit(sw::report::estimates_output({r}), r.value, 1, out);
  });
}

sw_status sw_orthocheck(int order, int r, sw_result** out) {
  return guarded([&] {
    need(out, "out");
    const sw::OrthogonalityReport rep = sw::orthogonality_check(order, r);
    const bool ok = rep.exact_ok && rep.max_float_deviation <= 1e-14;
    return emit(sw::report::orthogonality_output(rep), rep.max_float_deviation, ok, out);
  });
}

sw_status sw_gaussian(const sw_gaussian_args* args, sw_result** out) {
  return guarded([&] {
    need(args, "args");
    need(out, "out");
    const sw::MonteCarloReport r =
        sw::estimate_expected_schatten(args->order, exponent(args->q), args->trials, args->seed);
    return emit(sw::report::gaussian_output({r}), r.mean, 1, out);
  });
}

sw_status sw_dvoretzky(const sw_dvoretzky_args* args, sw_result** out) {
  return guarded([&] {
    need(args, "args");
    need(out, "out");
    const sw::Exponent q = exponent(args->q);
    const int k = args->k > 0 ? args->k : sw::critical_dimension(args->order, q, args->crit_frac);
    const sw::DvoretzkyBandReport r = sw::dvoretzky_band(args->order, q, k, args->trials, args->seed);
    return emit(sw::report::dvoretzky_output(r), r.ratio.max / r.ratio.min, 1, out);
  });
}

sw_envelope_config sw_envelope_default_config(void) {
  const sw::EnvelopeConfig c;
  return {c.small_codim_fraction, c.critical_dim_fraction};
}

sw_status sw_envelope(double p, double q, int order, int n, const sw_envelope_config* cfg,
                      sw_result** out) {
  return guarded([&] {
    need(out, "out");
    const sw::Exponent ep = exponent(p), eq = exponent(q);
    const sw::RegimeRate rate = sw::evaluate_envelope(ep, eq, order, n, config(cfg));
    return emit(sw::report::envelope_output({{ep, eq, order, n, rate}}), rate.upper, 1, out);
  });
}

size_t sw_default_exponent_grid(double* out, size_t cap) {
  const auto grid = sw::default_exponent_grid();
  for (size_t i = 0; out && i < cap && i < grid.size(); ++i) out[i] = grid[i].as_double();
  return grid.size();
}

sw_status sw_phase_diagram(const double* p_grid, size_t p_count, const double* q_grid, size_t q_count,
                           int order, const int* n_grid, size_t n_count, const sw_envelope_config* cfg,
                           sw_result** out) {
  return guarded([&] {
    need(p_grid, "p_grid");
    need(q_grid, "q_grid");
    need(n_grid, "n_grid");
    need(out, "out");
    std::vector<sw::Exponent> ps, qs;
    for (size_t i = 0; i < p_count; ++i) ps.push_back(exponent(p_grid[i]));
    for (size_t i = 0; i < q_count; ++i) qs.push_back(exponent(q_grid[i]));
    const std::vector<int> ns(n_grid, n_grid + n_count);
    const auto rows = sw::phase_diagram(ps, qs, order, ns, config(cfg));
    return emit(sw::report::envelope_output(rows), static_cast<double>(rows.size()), 1, out);
  });
}

sw_status sw_verify(const sw_verify_args* args, sw_result** out) {
  return guarded([&] {
    need(out, "out");
    sw::report::VerifyOptions o;
    if (args) {
      if (args->criteria) o.criteria.assign(args->criteria, args->criteria + args->criteria_count);
      if (args->mutate_kappa) o.kappa = [](int k, int order) { return sw::kappa(k, order) + 1; };
      if (args->on_line) {
        const sw_verify_callback cb = args->on_line;
        void* user = args->user;
        o.on_result = [cb, user](const sw::report::CriterionResult& r) {
          cb(sw::report::verdict_line(r).c_str(), user);
        };
      }
    }
    const sw::report::VerifyReport report = sw::report::verify_primary(o);
    sw::report::Output output{sw::report::verdict_csv(report), sw::report::verdict_json(report)};
    int passed_count = 0;
    for (const auto& c : report.criteria) passed_count += c.passed;
    return emit(output, passed_count, report.passed, out);
  });
}

}  // extern "C"
