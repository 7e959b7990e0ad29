#pragma once

// Brute-force references for tiny instances and the closed-form analysis
// formulas. Everything here is test-scale: enumeration is exponential in K.

#include "bmap/core_model.hpp"
#include "bmap/distributions.hpp"
#include "bmap/rng.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace bmap {

/// Largest C(N, K) any enumeration will visit.
inline constexpr double kEnumerationLimit = 1e6;

double binomial(Index n, Index k);

/// Streaming log(sum exp(x_i)); empty sum is -inf.
class LogSumExp {
 public:
  void add(double x);
  void merge(const LogSumExp& other);
  double value() const;

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double scaled_sum_ = 0.0;
};

/// log p~(S) + log f(y | S) for support set S with x = beta on S. p~ is the
/// product-form prior; restricted to K-subsets it is the exact constrained
/// prior up to one normalizing constant.
double log_joint(const RecoveryProblem& problem, double beta, const IndexList& support);

/// argmax over all K-subsets of the posterior (constant-amplitude model).
/// With sigma2 = 0 this is the subset with the smallest residual. Ties go to
/// the lexicographically first subset. Throws InstanceTooLarge past the guard.
IndexList exact_map_support(const RecoveryProblem& problem, const SignalModel& model);

/// log P(i in S | given in S, y, A) by enumeration.
double exact_log_bitwise_posterior(const RecoveryProblem& problem, const SignalModel& model,
                                   const SupportEstimate& given, Index i);

inline double exact_bitwise_posterior(const RecoveryProblem& problem, const SignalModel& model,
                                      const SupportEstimate& given, Index i) {
  return std::exp(exact_log_bitwise_posterior(problem, model, given, i));
}

/// Constants that make the Jensen bound an inequality:
///   log P(i_k in S | given, y, A) + C1 >= total.
/// D1 = log P(given in S | y, A); D2 = log f(y) - log |Omega_I|;
/// D3 = (N - k) H2(lambda_k); D4 = (M/2) log(2 pi sigma2) + ||r||^2 / (2 sigma2).
struct BoundConstants {
  double D1;
  double D2;
  double D3;
  double D4;
  double C1;
};

struct BoundBreakdown {
  double kl_sum;           // sum_j -KL(Bern(alpha_j) || Bern(p_j))
  double likelihood_term;  // (beta / sigma2) (a_ik + lambda_k A_{|I} 1)^T r
  double trace_term;       // -(beta^2 / 2 sigma2) tr(Q R)
  double total;
  std::optional<BoundConstants> constants;
};

/// Lower bound on the bit-wise log posterior of candidate i_k given the
/// selected indices, with Q and R built explicitly over [N] \ given.
/// Constants need enumeration and are computed only when requested.
BoundBreakdown theorem1_bound(const RecoveryProblem& problem, const SignalModel& model, const SupportEstimate& given,
                              Index i_k, bool with_constants = false);

/// prod_{k=1}^{K} (1 - exp(-M / (4 (M sigma2 + (K-k)(N-K-1)/(N-k-1)))))^{N-K}
double success_prob_lower_bound(Index M, Index N, int K, double sigma2);
/// (1 - exp(-M / (4 (M sigma2 + K - 1))))^{K (N-K)}
double success_prob_lower_bound_relaxed(Index M, Index N, int K, double sigma2);

/// ceil(c (1 + 1/snr) K ln N)
long measurement_scaling(Index N, int K, double delta_snr, double c);

/// a_l^T (a_i - a_j) / ||a_i - a_j|| for fresh N(0, 1/M) columns.
std::vector<double> lemma1_projection_samples(Index M, std::size_t n_samples, Rng& rng);

/// Kolmogorov-Smirnov distance between the samples and N(0, variance).
double ks_statistic_normal(std::vector<double> samples, double variance);
/// Asymptotic one-sample KS critical value at level alpha.
double ks_critical_value(std::size_t n, double alpha);

}  // namespace bmap
