#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linalg/exponent.hpp"
#include "linalg/matrix.hpp"
#include "subspaces/subspace.hpp"

namespace sw {

enum class WidthKind { Gelfand, Kolmogorov };
enum class Direction { CertifiedLower, HeuristicUpper, Heuristic };

std::string to_string(WidthKind k);
std::string to_string(Direction d);

/// For Kolmogorov widths of a finite set, p is absent and q names the target
/// norm exponent.
struct WidthQuery {
  WidthKind kind;
  std::optional<Exponent> p;
  Exponent q;
  int order;
  int n;
};

struct EstimateReport {
  WidthQuery query;
  double value;
  Direction direction;
  std::optional<SquareMatrix> witness;
  std::optional<MatrixSubspace> subspace;
  int restarts;
  long long iterations;
  std::uint64_t seed;
  std::vector<double> start_values;
  std::string note;
};

}  // namespace sw
