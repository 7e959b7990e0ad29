#include "bmap/least_squares.hpp"

#include <stdexcept>

namespace bmap {

Vector least_squares(const Matrix& A_sub, const Vector& y) {
  if (A_sub.rows() != y.size()) throw std::invalid_argument("least_squares: row count differs from y length");
  if (A_sub.cols() == 0) return Vector(0);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
  cod.setThreshold(kRankThreshold);
  cod.compute(A_sub);
  return cod.solve(y);
}

Matrix gather_columns(const Matrix& A, const IndexList& cols) {
  Matrix out(A.rows(), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Index>(i)) = A.col(cols[i]);
  return out;
}

}  // namespace bmap
