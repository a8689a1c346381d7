#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sw::report {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
  double budget_seconds;  // 0 when the criterion has no runtime bound
  nlohmann::json artifact;  // measured values; deterministic for a fixed build
};

struct VerifyOptions {
  /// Criterion ids to run (1..13); empty runs all of them.
  std::vector<int> criteria;
  /// kappa(k, N); replaceable so that a tampered formula can be shown to fail.
  std::function<long long(int, int)> kappa;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  bool passed;
};

constexpr int kCriterionCount = 13;
std::string criterion_name(int id);

/// Runs the primary acceptance suite with pinned seeds. Criteria 1..12 run
/// with one worker; criterion 13 reruns the selected ones with eight workers
/// (all of 1..12 when only 13 is selected) and compares the serialized
/// artifacts byte for byte.
VerifyReport verify_primary(const VerifyOptions& options = {});

nlohmann::json verdict_json(const VerifyReport& report);
std::string verdict_csv(const VerifyReport& report);
/// "[PASS] 3 kappa-identity (0.00 s): detail"
std::string verdict_line(const CriterionResult& r);

}  // namespace sw::report
