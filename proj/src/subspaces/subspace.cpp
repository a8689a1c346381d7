#include "subspaces/subspace.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "linalg/format.hpp"
#include "randmat/rng.hpp"
#include "runtime/error.hpp"

namespace sw {
namespace {

constexpr double kDropRatio = 1e-10;
constexpr double kGramTolerance = 1e-8;
constexpr double kReadWarnTolerance = 1e-6;

// Two-pass modified Gram-Schmidt; returns the kept orthonormal columns.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& columns) {
  double scale = 0.0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) scale = std::max(scale, columns.col(j).norm());
  Eigen::MatrixXd q(columns.rows(), columns.cols());
  Eigen::Index kept = 0;
  if (scale == 0.0 || !std::isfinite(scale)) return q.leftCols(0);
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Vector v = columns.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < kept; ++i) v -= q.col(i).dot(v) * q.col(i);
    const double r = v.norm();
    if (r < kDropRatio * scale) continue;
    q.col(kept++) = v / r;
  }
  return q.leftCols(kept);
}

}  // namespace

MatrixSubspace::MatrixSubspace(int order, Eigen::MatrixXd orthonormal_basis)
    : order_(order), basis_(std::move(orthonormal_basis)) {
  require(order >= 1, "subspace order must be positive");
  require(basis_.rows() == static_cast<Eigen::Index>(order) * order,
          "basis vectors must have N^2 entries");
  require(basis_.cols() >= 1, "the zero subspace is not allowed");
  require(basis_.cols() <= basis_.rows(), "more basis vectors than the ambient dimension");
  if (!(gram_deviation(basis_) <= kGramTolerance))
    throw UsageError("subspace basis is not orthonormal");
}

SquareMatrix MatrixSubspace::basis_matrix(int index) const {
  require(index >= 0 && index < dim(), "basis index out of range");
  return unvectorize(basis_.col(index), order_);
}

SquareMatrix MatrixSubspace::member(const Vector& coefficients) const {
  require(coefficients.size() == dim(), "coefficient vector length must equal dim");
  return unvectorize(basis_ * coefficients, order_);
}

Vector MatrixSubspace::coefficients(const SquareMatrix& a) const {
  require(a.rows() == order_ && a.cols() == order_, "matrix order does not match subspace");
  return basis_.transpose() * vectorize(a);
}

MatrixSubspace from_spanning_set(const std::vector<SquareMatrix>& matrices) {
  require(!matrices.empty(), "spanning set is empty");
  const auto order = matrices.front().rows();
  Eigen::MatrixXd columns(order * order, static_cast<Eigen::Index>(matrices.size()));
  for (std::size_t j = 0; j < matrices.size(); ++j) {
    validate_square(matrices[j]);
    require(matrices[j].rows() == order, "spanning set matrices must share one order");
    columns.col(static_cast<Eigen::Index>(j)) = vectorize(matrices[j]);
  }
  return from_spanning_columns(static_cast<int>(order), columns);
}

MatrixSubspace from_spanning_columns(int order, const Eigen::MatrixXd& columns) {
  require(order >= 1 && columns.rows() == static_cast<Eigen::Index>(order) * order,
          "spanning columns must have N^2 entries");
  if (!columns.allFinite()) throw InputError("spanning set has non-finite entries");
  Eigen::MatrixXd q = orthonormalize(columns);
  if (q.cols() == 0) throw InputError("spanning set is numerically zero");
  return MatrixSubspace(order, std::move(q));
}

MatrixSubspace coordinate_row_subspace(int order, int zero_rows) {
  require(order >= 1, "order must be positive");
  require(zero_rows >= 0 && zero_rows < order,
          "number of zeroed rows must satisfy 0 <= k < N (k = N leaves the zero subspace)");
  const int n2 = order * order;
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n2, (order - zero_rows) * order);
  int c = 0;
  for (int col = 0; col < order; ++col)
    for (int row = zero_rows; row < order; ++row) basis(col * order + row, c++) = 1.0;
  return MatrixSubspace(order, std::move(basis));
}

MatrixSubspace random_subspace(int order, int dim, std::uint64_t seed) {
  require(order >= 1, "order must be positive");
  require(dim >= 1 && dim <= order * order, "dimension must lie in [1, N^2]");
  RandomStream stream(seed, Salt::RandomSubspace, 0);
  const Eigen::MatrixXd g = gaussian_matrix(stream, order * order, dim);
  Eigen::MatrixXd q = orthonormalize(g);
  if (q.cols() != dim) throw NumericalError("Gaussian spanning set lost rank");
  return MatrixSubspace(order, std::move(q));
}

MatrixSubspace orthogonal_complement(const MatrixSubspace& s) {
  const int n2 = s.order() * s.order();
  require(s.dim() < n2, "the full space has a trivial complement");
  // Gram-Schmidt the coordinate axes against the basis of s.
  Eigen::MatrixXd columns(n2, s.dim() + n2);
  columns << s.basis(), Eigen::MatrixXd::Identity(n2, n2);
  Eigen::MatrixXd q = orthonormalize(columns);
  if (q.cols() != n2) throw NumericalError("complement construction lost rank");
  return MatrixSubspace(s.order(), q.rightCols(n2 - s.dim()));
}

SquareMatrix project(const SquareMatrix& a, const MatrixSubspace& s) {
  return s.member(s.coefficients(a));
}

double containment_residual(const SquareMatrix& a, const MatrixSubspace& s) {
  return (a - project(a, s)).norm();
}

double gram_deviation(const Eigen::MatrixXd& basis) {
  const Eigen::MatrixXd gram = basis.transpose() * basis;
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

SubspaceReadResult read_subspace(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  std::istringstream header(line);
  long long order = 0, count = 0;
  std::string extra;
  if (!(header >> order >> count) || (header >> extra) || order < 1 || count < 1)
    throw InputError("subspace header must be \"N m\" with positive integers");
  if (count > order * order) throw InputError("subspace header has m > N^2");

  Eigen::MatrixXd stored(order * order, count);
  for (long long j = 0; j < count; ++j) {
    SquareMatrix a = read_matrix(in);
    if (a.rows() != order)
      throw InputError("subspace member " + std::to_string(j + 1) + " has order " +
                       std::to_string(a.rows()) + ", expected " + std::to_string(order));
    stored.col(j) = vectorize(a);
  }
  const double deviation = gram_deviation(stored);
  MatrixSubspace s = from_spanning_columns(static_cast<int>(order), stored);
  std::optional<std::string> warning;
  if (deviation > kReadWarnTolerance)
    warning = "stored basis deviates from orthonormal by " + format_double(deviation) +
              "; re-orthonormalized to dim " + std::to_string(s.dim());
  return {std::move(s), deviation, std::move(warning)};
}

SubspaceReadResult read_subspace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open subspace file '" + path + "'");
  return read_subspace(in);
}

void write_subspace(std::ostream& out, const MatrixSubspace& s) {
  out << s.order() << ' ' << s.dim() << '\n';
  for (int j = 0; j < s.dim(); ++j) write_matrix(out, s.basis_matrix(j));
}

void write_subspace_file(const std::string& path, const MatrixSubspace& s) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write subspace file '" + path + "'");
  write_subspace(out, s);
}

}  // namespace sw
