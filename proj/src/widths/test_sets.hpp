#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "linalg/matrix.hpp"

namespace sw {

enum class SetProvenance { VasilevaExtreme, Averaged, Custom };

struct FiniteTestSet {
  int order;
  std::vector<SquareMatrix> members;
  SetProvenance provenance;
  std::optional<long long> group_size;
};

/// The 2N^2 matrices +e_ij, -e_ij (column-major over (i, j), + before -).
FiniteTestSet vasileva_extreme_points(int order);

/// (N!)^2 2^N, or nullopt when it overflows 64 bits.
std::optional<long long> averaging_group_size(int order);

constexpr long long kEnumerationCap = 1000000;

/// Signed, doubly permuted copies eps_i A^r_{pi1(i), pi2(j)} of the diagonal
/// A^r = diag(1, ..., 1, 0, ..., 0) with r ones. Enumerate mode walks all of
/// G (lexicographic pi1, then pi2, then sign bits) and needs |G| <= 10^6.
FiniteTestSet averaged_set_enumerate(int order, int r);
/// count members drawn with seeded Fisher-Yates permutations and random signs.
FiniteTestSet averaged_set_sample(int order, int r, int count, std::uint64_t seed);

struct OrthogonalityReport {
  int order;
  int r;
  long long group_size;
  bool exact_ok;               // integer check of the identity for every pair
  long long exact_mismatches;
  double max_float_deviation;  // floating averages against r/N^2 or 0
};

/// Checks that phi_ij(gamma) = gamma(A^r)_ij satisfy
/// |G|^-1 sum_gamma phi_ij phi_i'j' = r/N^2 on the diagonal and 0 elsewhere.
OrthogonalityReport orthogonality_check(int order, int r);

}  // namespace sw
