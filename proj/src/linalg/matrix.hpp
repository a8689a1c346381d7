#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace sw {

/// Dense real N x N matrix, N >= 1, all entries finite. Column-major; the
/// vectorization used throughout is Eigen's column-major flattening.
using SquareMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Throws UsageError for empty or non-square input and InputError for
/// NaN or infinite entries.
void validate_square(const SquareMatrix& a);

/// The matrix unit e_{i,j} (zero-based indices).
SquareMatrix matrix_unit(int order, int row, int col);

inline Eigen::Map<const Vector> vectorize(const SquareMatrix& a) {
  return {a.data(), a.size()};
}

inline SquareMatrix unvectorize(const Vector& v, int order) {
  return Eigen::Map<const SquareMatrix>(v.data(), order, order);
}

/// Reads the text matrix format: a line "N", then N lines of N
/// comma-separated decimals. Throws InputError on malformed content.
SquareMatrix read_matrix(std::istream& in);
SquareMatrix read_matrix_file(const std::string& path);

/// Writes the text matrix format with 17 significant digits.
void write_matrix(std::ostream& out, const SquareMatrix& a);
void write_matrix_file(const std::string& path, const SquareMatrix& a);

/// The text format as a string.
std::string matrix_to_text(const SquareMatrix& a);

}  // namespace sw
