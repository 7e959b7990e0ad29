#pragma once

// Column-wise scoring kernels. Each kernel has a serial reference and an
// OpenMP version over columns; both evaluate every column with the same
// arithmetic, so their outputs agree bit for bit.

#include "bmap/core_model.hpp"

namespace bmap {

enum class Exec { Serial, Parallel };

namespace kernels {

/// Scalars of one proxy evaluation:
///   score_j = prior_weight * log_odds_j
///           + inv_sigma2 * (beta (1 - lambda) a_j^T r
///                           - beta^2 lambda (1 - lambda_next) a_j^T colsum
///                           - tau / 2 ||a_j||^2)
/// with tau = beta^2 (1 - 3 lambda + 2 lambda lambda_next). With two_sided
/// the score is the larger of the +beta and -beta evaluations.
struct ProxyCoefficients {
  double beta;
  double lambda;
  double lambda_next;
  double inv_sigma2;
  double prior_weight;
  bool two_sided;

  double tau() const { return beta * beta * (1.0 - 3.0 * lambda + 2.0 * lambda * lambda_next); }
};

void bmap_scores_serial(const Matrix& A, const Vector& r, const Vector& colsum, const Vector& log_odds,
                        const ProxyCoefficients& c, Vector& out);
void bmap_scores_parallel(const Matrix& A, const Vector& r, const Vector& colsum, const Vector& log_odds,
                          const ProxyCoefficients& c, Vector& out);

/// out_j = |a_j^T r|
void abs_correlation_serial(const Matrix& A, const Vector& r, Vector& out);
void abs_correlation_parallel(const Matrix& A, const Vector& r, Vector& out);

inline void bmap_scores(Exec exec, const Matrix& A, const Vector& r, const Vector& colsum, const Vector& log_odds,
                        const ProxyCoefficients& c, Vector& out) {
  exec == Exec::Parallel ? bmap_scores_parallel(A, r, colsum, log_odds, c, out)
                         : bmap_scores_serial(A, r, colsum, log_odds, c, out);
}

inline void abs_correlation(Exec exec, const Matrix& A, const Vector& r, Vector& out) {
  exec == Exec::Parallel ? abs_correlation_parallel(A, r, out) : abs_correlation_serial(A, r, out);
}

}  // namespace kernels
}  // namespace bmap
