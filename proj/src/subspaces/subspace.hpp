#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "linalg/matrix.hpp"

namespace sw {

/// A linear subspace of the N^2-dimensional space of N x N matrices, stored
/// as an orthonormal basis of vectorized matrices (the columns of `basis`).
class MatrixSubspace {
 public:
  /// Takes a basis that is already orthonormal; checks the Gram matrix
  /// against the identity within 1e-8 entrywise.
  MatrixSubspace(int order, Eigen::MatrixXd orthonormal_basis);

  int order() const noexcept { return order_; }
  int dim() const noexcept { return static_cast<int>(basis_.cols()); }
  int codim() const noexcept { return order_ * order_ - dim(); }

  /// N^2 x dim, orthonormal columns.
  const Eigen::MatrixXd& basis() const noexcept { return basis_; }
  SquareMatrix basis_matrix(int index) const;

  /// Member with coefficient vector c (length dim) in the basis.
  SquareMatrix member(const Vector& coefficients) const;
  /// Basis coefficients of the orthogonal projection of a.
  Vector coefficients(const SquareMatrix& a) const;

 private:
  int order_;
  Eigen::MatrixXd basis_;
};

/// Modified Gram-Schmidt (two passes) over the vectorized inputs. Directions
/// whose residual norm falls below 1e-10 times the largest input norm are
/// dropped. Throws InputError if everything is numerically zero.
MatrixSubspace from_spanning_set(const std::vector<SquareMatrix>& matrices);

/// Same, over vectorized columns of a N^2 x m matrix.
MatrixSubspace from_spanning_columns(int order, const Eigen::MatrixXd& columns);

/// All matrices whose first k rows vanish. Requires 0 <= k < N.
MatrixSubspace coordinate_row_subspace(int order, int zero_rows);

/// Orthonormalized span of dim i.i.d. standard Gaussian matrices.
MatrixSubspace random_subspace(int order, int dim, std::uint64_t seed);

/// Orthogonal complement inside the N^2-dimensional matrix space. Requires
/// the complement to be non-trivial.
MatrixSubspace orthogonal_complement(const MatrixSubspace& s);

/// Orthogonal projection onto s.
SquareMatrix project(const SquareMatrix& a, const MatrixSubspace& s);

/// Frobenius distance from a to s.
double containment_residual(const SquareMatrix& a, const MatrixSubspace& s);

/// Largest entrywise deviation of the basis Gram matrix from the identity.
double gram_deviation(const Eigen::MatrixXd& basis);

/// Subspace file format: a line "N m", then m matrices in the text matrix
/// format. The reader re-orthonormalizes; when the stored basis deviates from
/// orthonormal by more than 1e-6 a warning message is returned alongside.
struct SubspaceReadResult {
  MatrixSubspace subspace;
  double stored_gram_deviation;
  std::optional<std::string> warning;
};

SubspaceReadResult read_subspace(std::istream& in);
SubspaceReadResult read_subspace_file(const std::string& path);
void write_subspace(std::ostream& out, const MatrixSubspace& s);
void write_subspace_file(const std::string& path, const MatrixSubspace& s);

}  // namespace sw
