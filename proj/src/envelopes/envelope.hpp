#pragma once

#include <string>
#include <vector>

#include "linalg/exponent.hpp"

namespace sw {

/// Stand-ins for the unknown constants of the rate theorems.
struct EnvelopeConfig {
  double small_codim_fraction = 0.5;   // c_{p,q}: "small n" means n <= c_{p,q} N^2
  double critical_dim_fraction = 0.1;  // c in N_q = c N^(1 + 2/q)
};

enum class Regime { A1, A2, A3, A4, A5, A6, B1, B2, B3, Gap };

/// "TheoremA.1", ..., "TheoremB.3", "gap".
std::string regime_label(Regime r);
bool is_theorem_a(Regime r);

struct RegimeRate {
  Regime regime;
  double lower;  // equal to upper for point rates
  double upper;
  bool sharp;
  bool constant_dependent;
  EnvelopeConfig thresholds_used;
};

/// Total classification of (p, q, N, n) into one regime. Throws UsageError
/// only for invalid arguments (n outside [1, N^2], bad config).
Regime classify(const Exponent& p, const Exponent& q, int order, int n,
                const EnvelopeConfig& cfg = {});

/// Regime plus evaluated rate or bracket. Works for every valid query; gap
/// regions return the best available bracket.
RegimeRate evaluate_envelope(const Exponent& p, const Exponent& q, int order, int n,
                             const EnvelopeConfig& cfg = {});

/// Point rate of the matching Theorem A case; UsageError outside them.
RegimeRate theorem_a_rate(const Exponent& p, const Exponent& q, int order, int n,
                          const EnvelopeConfig& cfg = {});

/// Bracket of the Theorem B case whose range contains the query, checked
/// independently of classify's precedence; UsageError outside all three.
RegimeRate theorem_b_bounds(const Exponent& p, const Exponent& q, int order, int n,
                            const EnvelopeConfig& cfg = {});

struct ReferenceRate {
  std::string tag;  // CD, CD2, CDK, HM-upper, HM-lower
  double rate;
};

/// Every prior-work rate whose parameter range contains the query.
std::vector<ReferenceRate> reference_rates(const Exponent& p, const Exponent& q, int order, int n);

/// theta with 1/q = (1 - theta)/2 + theta/p, for 1 <= p < q < 2.
double interpolation_exponent(const Exponent& p, const Exponent& q);

struct PhaseRow {
  Exponent p;
  Exponent q;
  int order;
  int n;
  RegimeRate rate;
};

/// One row per (p, q, n), p-major then q then n.
std::vector<PhaseRow> phase_diagram(const std::vector<Exponent>& p_grid,
                                    const std::vector<Exponent>& q_grid, int order,
                                    const std::vector<int>& n_grid, const EnvelopeConfig& cfg = {});

/// 0.25 * 2^(k/3), k = 0..18, followed by infinity.
std::vector<Exponent> default_exponent_grid();

}  // namespace sw
