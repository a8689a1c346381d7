#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "envelopes/envelope.hpp"
#include "multiplicity/flat_top.hpp"
#include "randmat/montecarlo.hpp"
#include "widths/estimate.hpp"
#include "widths/test_sets.hpp"

namespace sw::report {

/// A result rendered both ways: CSV for stdout, JSON for archival.
struct Output {
  std::string csv;
  nlohmann::json json;
};

/// CSV with a header row; fields are written verbatim (none contain commas).
std::string to_csv(const std::vector<std::string>& columns,
                   const std::vector<std::vector<std::string>>& rows);

std::string number(double v);  // 17 significant digits
nlohmann::json matrix_json(const SquareMatrix& a);

struct NormRow {
  std::string kind;  // schatten, mixed
  std::string exponent;
  double value;
};
Output norms_output(const SquareMatrix& a, const std::vector<NormRow>& rows);

Output estimates_output(const std::vector<EstimateReport>& reports);
Output envelope_output(const std::vector<PhaseRow>& rows);
Output gaussian_output(const std::vector<MonteCarloReport>& reports);
Output dvoretzky_output(const DvoretzkyBandReport& r);
Output flat_top_output(const MultiplicityCertificate& c, int order, int dim, std::uint64_t seed,
                       double tol);
Output orthogonality_output(const OrthogonalityReport& r);

}  // namespace sw::report
