#include "report/serialize.hpp"

#include <sstream>

#include "linalg/format.hpp"

namespace sw::report {
namespace {

std::string boolean(bool b) { return b ? "true" : "false"; }

nlohmann::json doubles(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

std::string to_csv(const std::vector<std::string>& columns,
                   const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out.str();
}

std::string number(double v) { return format_double17(v); }

nlohmann::json matrix_json(const SquareMatrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(row);
  }
  return rows;
}

Output norms_output(const SquareMatrix& a, const std::vector<NormRow>& rows) {
  Output o;
  std::vector<std::vector<std::string>> csv;
  o.json["N"] = a.rows();
  o.json["norms"] = nlohmann::json::array();
  for (const auto& r : rows) {
    csv.push_back({std::to_string(a.rows()), r.kind, r.exponent, number(r.value)});
    o.json["norms"].push_back({{"kind", r.kind}, {"exponent", r.exponent}, {"value", r.value}});
  }
  o.csv = to_csv({"N", "norm", "exponent", "value"}, csv);
  return o;
}

Output estimates_output(const std::vector<EstimateReport>& reports) {
  Output o;
  std::vector<std::vector<std::string>> csv;
  o.json["rows"] = nlohmann::json::array();
  for (const auto& r : reports) {
    const std::string p = r.query.p ? r.query.p->to_string() : "";
    csv.push_back({to_string(r.query.kind), p, r.query.q.to_string(), std::to_string(r.query.order),
                   std::to_string(r.query.n), number(r.value), to_string(r.direction),
                   std::to_string(r.seed), std::to_string(r.restarts)});
    nlohmann::json j = {{"kind", to_string(r.query.kind)},
                        {"p", r.query.p ? nlohmann::json(p) : nlohmann::json(nullptr)},
                        {"q", r.query.q.to_string()},
                        {"N", r.query.order},
                        {"n", r.query.n},
                        {"value", r.value},
                        {"direction", to_string(r.direction)},
                        {"seed", r.seed},
                        {"restarts", r.restarts},
                        {"iterations", r.iterations},
                        {"start_values", doubles(r.start_values)},
                        {"note", r.note}};
    if (r.witness) j["witness"] = matrix_json(*r.witness);
    if (r.subspace) j["subspace_dim"] = r.subspace->dim();
    o.json["rows"].push_back(j);
  }
  o.csv = to_csv({"kind", "p", "q", "N", "n", "value", "direction", "seed", "restarts"}, csv);
  return o;
}

Output envelope_output(const std::vector<PhaseRow>& rows) {
  Output o;
  std::vector<std::vector<std::string>> csv;
  o.json["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    const RegimeRate& e = r.rate;
    csv.push_back({r.p.to_string(), r.q.to_string(), std::to_string(r.order), std::to_string(r.n),
                   regime_label(e.regime), number(e.lower), number(e.upper), boolean(e.sharp),
                   boolean(e.constant_dependent)});
    o.json["rows"].push_back({{"p", r.p.to_string()},
                              {"q", r.q.to_string()},
                              {"N", r.order},
                              {"n", r.n},
                              {"regime", regime_label(e.regime)},
                              {"rate_lower", e.lower},
                              {"rate_upper", e.upper},
                              {"sharp", e.sharp},
                              {"constant_dependent", e.constant_dependent},
                              {"small_codim_fraction", e.thresholds_used.small_codim_fraction},
                              {"critical_dim_fraction", e.thresholds_used.critical_dim_fraction}});
  }
  o.csv = to_csv({"p", "q", "N", "n", "regime", "rate_lower", "rate_upper", "sharp", "constant_dependent"},
                 csv);
  return o;
}

Output gaussian_output(const std::vector<MonteCarloReport>& reports) {
  Output o;
  std::vector<std::vector<std::string>> csv;
  o.json["rows"] = nlohmann::json::array();
  for (const auto& r : reports) {
    csv.push_back({std::to_string(r.order), r.q.to_string(), "", std::to_string(r.trials),
                   std::to_string(r.seed), number(r.mean), number(r.standard_error),
                   number(r.normalized_mean)});
    o.json["rows"].push_back({{"N", r.order},
                              {"q", r.q.to_string()},
                              {"trials", r.trials},
                              {"seed", r.seed},
                              {"mean", r.mean},
                              {"stderr", r.standard_error},
                              {"normalized_mean", r.normalized_mean}});
  }
  o.csv = to_csv({"N", "q", "k", "trials", "seed", "mean", "stderr", "normalized_mean"}, csv);
  return o;
}

Output dvoretzky_output(const DvoretzkyBandReport& r) {
  Output o;
  o.csv = to_csv({"N", "q", "k", "trials", "seed", "ratio_min", "ratio_median", "ratio_max",
                  "nuclear_min", "nuclear_median", "nuclear_max"},
                 {{std::to_string(r.order), r.q.to_string(), std::to_string(r.k),
                   std::to_string(r.trials), std::to_string(r.seed), number(r.ratio.min),
                   number(r.ratio.median), number(r.ratio.max), number(r.nuclear.min),
                   number(r.nuclear.median), number(r.nuclear.max)}});
  auto band = [](const Band& b) {
    return nlohmann::json{{"min", b.min}, {"median", b.median}, {"max", b.max}};
  };
  o.json = {{"N", r.order}, {"q", r.q.to_string()}, {"k", r.k},          {"trials", r.trials},
            {"seed", r.seed}, {"ratio", band(r.ratio)}, {"nuclear", band(r.nuclear)}};
  return o;
}

Output flat_top_output(const MultiplicityCertificate& c, int order, int dim, std::uint64_t seed,
                       double tol) {
  Output o;
  o.csv = to_csv({"N", "k", "dim", "seed", "spectral_residual", "norm_excess", "containment_residual"},
                 {{std::to_string(order), std::to_string(c.k), std::to_string(dim), std::to_string(seed),
                   number(c.spectral_residual), number(c.norm_excess), number(c.containment_residual)}});
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& [mult, gamma] : c.gamma_trace) trace.push_back({{"multiplicity", mult}, {"gamma", gamma}});
  o.json = {{"N", order},
            {"k", c.k},
            {"dim", dim},
            {"seed", seed},
            {"tol", tol},
            {"matrix", matrix_to_text(c.matrix)},
            {"spectral_residual", c.spectral_residual},
            {"norm_excess", c.norm_excess},
            {"containment_residual", c.containment_residual},
            {"gamma_trace", trace},
            {"separation_residuals", doubles(c.separation_residuals)}};
  return o;
}

Output orthogonality_output(const OrthogonalityReport& r) {
  Output o;
  o.csv = to_csv({"N", "r", "group_size", "exact_ok", "exact_mismatches", "max_float_deviation"},
                 {{std::to_string(r.order), std::to_string(r.r), std::to_string(r.group_size),
                   boolean(r.exact_ok), std::to_string(r.exact_mismatches),
                   number(r.max_float_deviation)}});
  o.json = {{"N", r.order},
            {"r", r.r},
            {"group_size", r.group_size},
            {"exact_ok", r.exact_ok},
            {"exact_mismatches", r.exact_mismatches},
            {"max_float_deviation", r.max_float_deviation}};
  return o;
}

}  // namespace sw::report
