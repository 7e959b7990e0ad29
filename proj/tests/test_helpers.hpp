#pragma once

#include "bmap/core_model.hpp"
#include "bmap/ensembles.hpp"
#include "bmap/rng.hpp"

#include <Eigen/QR>

namespace bmap::test {

/// M x N with orthonormal columns (N <= M).
inline Matrix orthonormal(Index M, Index N, std::uint64_t seed) {
  Rng rng(seed, 0);
  const Matrix G = generate_matrix(MatrixEnsemble::GaussianInvM, M, M, rng);
  Eigen::HouseholderQR<Matrix> qr(G);
  return Matrix(qr.householderQ()).leftCols(N);
}

struct Instance {
  Matrix A;
  GroundTruth truth;
  Vector y;
};

inline Instance gaussian_instance(Index M, Index N, int K, double beta, double sigma2, std::uint64_t seed) {
  Rng rng(seed, 1);
  Matrix A = generate_matrix(MatrixEnsemble::GaussianInvM, M, N, rng);
  GroundTruth truth(sample_support(N, K, Vector{}, rng), std::vector<double>(static_cast<std::size_t>(K), beta), N);
  Vector y = measure(A, truth, sigma2, rng);
  return {std::move(A), std::move(truth), std::move(y)};
}

inline Vector random_priors(Index N, std::uint64_t seed) {
  Rng rng(seed, 2);
  Vector p(N);
  for (Index j = 0; j < N; ++j) p[j] = rng.uniform(0.1, 0.9);
  return p;
}

}  // namespace bmap::test
