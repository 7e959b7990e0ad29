#include "bmap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bmap::kernels {

namespace {

void check_shapes(const Matrix& A, const Vector& r, const Vector& colsum, const Vector& log_odds) {
  if (r.size() != A.rows() || colsum.size() != A.rows())
    throw std::invalid_argument("proxy kernel: vector length differs from the row count of A");
  if (log_odds.size() != A.cols()) throw std::invalid_argument("proxy kernel: prior length differs from N");
}

inline double score_column(const Matrix& A, Index j, const Vector& r, const Vector& colsum, double log_odds,
                           const ProxyCoefficients& c, double tau) {
  const auto a = A.col(j);
  const double corr_r = a.dot(r);
  const double corr_s = a.dot(colsum);
  const double energy = a.squaredNorm();
  const double linear = c.beta * (1.0 - c.lambda) * corr_r;
  const double even = -c.beta * c.beta * c.lambda * (1.0 - c.lambda_next) * corr_s - 0.5 * tau * energy;
  const double prior = c.prior_weight * log_odds;
  if (c.two_sided) return prior + c.inv_sigma2 * (std::abs(linear) + even);
  return prior + c.inv_sigma2 * (linear + even);
}

}  // namespace

void bmap_scores_serial(const Matrix& A, const Vector& r, const Vector& colsum, const Vector& log_odds,
                        const ProxyCoefficients& c, Vector& out) {
  check_shapes(A, r, colsum, log_odds);
  const Index N = A.cols();
  const double tau = c.tau();
  out.resize(N);
  for (Index j = 0; j < N; ++j) out[j] = score_column(A, j, r, colsum, log_odds[j], c, tau);
}

void bmap_scores_parallel(const Matrix& A, const Vector& r, const Vector& colsum, const Vector& log_odds,
                          const ProxyCoefficients& c, Vector& out) {
  check_shapes(A, r, colsum, log_odds);
  const Index N = A.cols();
  const double tau = c.tau();
  out.resize(N);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < N; ++j) out[j] = score_column(A, j, r, colsum, log_odds[j], c, tau);
}

void abs_correlation_serial(const Matrix& A, const Vector& r, Vector& out) {
  if (r.size() != A.rows()) throw std::invalid_argument("abs_correlation: length mismatch");
  const Index N = A.cols();
  out.resize(N);
  for (Index j = 0; j < N; ++j) out[j] = std::abs(A.col(j).dot(r));
}

void abs_correlation_parallel(const Matrix& A, const Vector& r, Vector& out) {
  if (r.size() != A.rows()) throw std::invalid_argument("abs_correlation: length mismatch");
  const Index N = A.cols();
  out.resize(N);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < N; ++j) out[j] = std::abs(A.col(j).dot(r));
}

}  // namespace bmap::kernels
