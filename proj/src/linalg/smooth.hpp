#pragma once

#include <vector>

#include "linalg/exponent.hpp"
#include "linalg/matrix.hpp"

namespace sw::detail {

// How one exponent enters a smoothed objective during a phase. Finite
// exponents <= 1 get (s^2 + eps^2)^(1/2) in place of s; the infinite exponent
// is approached through large finite powers before the exact subgradient.
struct Surrogate {
  double power;     // 0 encodes the exact max
  double smoothing; // fraction of the largest entry, 0 for none
};

std::vector<Surrogate> schedule(const Exponent& e);

/// log of the surrogate l_r norm of the nonnegative vector s and, when grad is
/// given, its derivative with respect to s. Ties at the maximum share the
/// subgradient of the exact max equally.
double log_norm(const Vector& s, const Surrogate& g, double eps, Vector* grad);

}  // namespace sw::detail
