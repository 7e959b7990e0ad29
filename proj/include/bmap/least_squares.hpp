#pragma once

#include "bmap/core_model.hpp"

namespace bmap {

/// Relative pivot threshold for rank detection in least_squares.
inline constexpr double kRankThreshold = 1e-10;

/// argmin_x ||y - A_sub x||_2; the minimum-norm minimizer when A_sub is
/// rank deficient (column-pivoted QR plus a complete orthogonal step).
Vector least_squares(const Matrix& A_sub, const Vector& y);

/// Columns of A at the given indices.
Matrix gather_columns(const Matrix& A, const IndexList& cols);

}  // namespace bmap
