#pragma once

#include "bmap/core_model.hpp"
#include "bmap/distributions.hpp"
#include "bmap/kernels.hpp"

#include <optional>

namespace bmap {

inline constexpr double kDefaultBetaDelta = 1e-3;

/// lambda_k = (K - k) / (N - k), the chance that an unselected index is in the
/// support once k - 1 correct indices are known. k = K + 1 is accepted; the
/// result is negative and only ever multiplied by lambda_K = 0.
double lambda_k(int K, Index N, int k);

struct BetaStarOptions {
  /// Replaces -Phi^{-1}(delta) for normal laws (3.1 reproduces the classic
  /// hand-rounded tables at delta = 1e-3).
  std::optional<double> normal_tail_z;
};

/// beta* = min{ mean, 2 F^{-1}(delta) } for a positive law; the mirrored value
/// (as a magnitude) for a negative law. Throws std::domain_error when the
/// result is not positive.
double beta_star_one_sided(const NonzeroDistribution& dist, double delta = kDefaultBetaDelta,
                           BetaStarOptions opts = {});

/// min{ |beta*_+|, |beta*_-| }, each side from its conditional law by the
/// one-sided quantile rule without the mean cap. Throws for models that are
/// not two-sided or where either sign has mass below delta.
double beta_star_two_sided(const SignalModel& model, double delta = kDefaultBetaDelta, BetaStarOptions opts = {});

/// Signed amplitude handed to the proxy: beta for constant models, +/- beta*
/// for one-sided models, +beta* for two-sided models.
double proxy_beta(const SignalModel& model, double delta = kDefaultBetaDelta, BetaStarOptions opts = {});

struct ProxyParams {
  double beta_star;
  double sigma2;
  Vector priors;
  int K;
  Index N;

  /// Validates beta != 0, K < N - 1, priors, and sigma2 = 0 only with uniform priors.
  ProxyParams(double beta_star, double sigma2, Vector priors, int K, Index N);

  const Vector& log_odds() const { return log_odds_; }
  bool uniform_priors() const { return uniform_; }

 private:
  Vector log_odds_;
  bool uniform_;
};

ProxyParams make_proxy_params(const RecoveryProblem& problem, double beta_star);

/// Scalars for iteration k with amplitude beta. sigma2 = 0 drops the 1/sigma2
/// factor (a positive constant for the argmax).
kernels::ProxyCoefficients proxy_coefficients(int k, const ProxyParams& params, double beta, bool two_sided);

/// A * 1 minus the selected columns.
Vector unselected_column_sum(const Matrix& A, const IndexList& selected);

/// Proxy for every column (no masking) given the unselected column sum.
Vector bmap_scores_all(const Matrix& A, const Vector& r, const Vector& unselected_colsum, int k,
                       const ProxyParams& params, bool two_sided, Exec exec = Exec::Serial);

/// B-MAP proxy over [N] \ selected; selected entries are -inf. Requires
/// k = |selected| + 1.
Vector bmap_scores(const Matrix& A, const Vector& r, const SupportEstimate& selected, int k,
                   const ProxyParams& params, Exec exec = Exec::Serial);

/// max of the +beta* and -beta* proxies, same masking as bmap_scores.
Vector bmap_scores_two_sided(const Matrix& A, const Vector& r, const SupportEstimate& selected, int k,
                             const ProxyParams& params, Exec exec = Exec::Serial);

/// |a_j^T r| for every column.
Vector omp_scores(const Matrix& A, const Vector& r, Exec exec = Exec::Serial);

/// Index of the largest finite entry, ties to the lowest index. -1 if none.
Index argmax_lowest(const Vector& scores);

/// Indices of the `count` largest entries in descending score order, ties to
/// the lower index. -inf entries are never picked.
IndexList top_indices(const Vector& scores, Index count);

}  // namespace bmap
