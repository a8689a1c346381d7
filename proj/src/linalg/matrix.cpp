#include "linalg/matrix.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "linalg/format.hpp"
#include "runtime/error.hpp"

namespace sw {

void validate_square(const SquareMatrix& a) {
  if (a.rows() < 1 || a.rows() != a.cols())
    throw UsageError("expected a non-empty square matrix, got " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()));
  if (!a.allFinite()) throw InputError("matrix has non-finite entries");
}

SquareMatrix matrix_unit(int order, int row, int col) {
  require(order >= 1 && row >= 0 && row < order && col >= 0 && col < order,
          "matrix unit index out of range");
  SquareMatrix e = SquareMatrix::Zero(order, order);
  e(row, col) = 1.0;
  return e;
}

namespace {

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

SquareMatrix read_matrix(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw InputError("matrix text is empty");
  const double order_value = parse_double(line);
  const int order = static_cast<int>(order_value);
  if (order < 1 || order != order_value) throw InputError("invalid matrix order '" + line + "'");

  SquareMatrix a(order, order);
  for (int i = 0; i < order; ++i) {
    if (!next_content_line(in, line))
      throw InputError("matrix text ends after " + std::to_string(i) + " of " +
                       std::to_string(order) + " rows");
    std::string_view rest(line);
    for (int j = 0; j < order; ++j) {
      const auto comma = rest.find(',');
      if ((comma == std::string_view::npos) != (j == order - 1))
        throw InputError("row " + std::to_string(i + 1) + " must have " + std::to_string(order) +
                         " comma-separated values");
      a(i, j) = parse_double(rest.substr(0, comma));
      if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
    }
  }
  if (!a.allFinite()) throw InputError("matrix has non-finite entries");
  return a;
}

SquareMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const SquareMatrix& a) {
  validate_square(a);
  out << a.rows() << '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) out << ',';
      out << format_double17(a(i, j));
    }
    out << '\n';
  }
}

void write_matrix_file(const std::string& path, const SquareMatrix& a) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write matrix file '" + path + "'");
  write_matrix(out, a);
}

std::string matrix_to_text(const SquareMatrix& a) {
  std::ostringstream os;
  write_matrix(os, a);
  return os.str();
}

}  // namespace sw
