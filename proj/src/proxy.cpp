#include "bmap/proxy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bmap {

double lambda_k(int K, Index N, int k) {
  if (k < 1 || k > K + 1) throw std::invalid_argument("lambda_k: need 1 <= k <= K + 1");
  if (N <= k) throw std::invalid_argument("lambda_k: need N > k");
  return static_cast<double>(K - k) / static_cast<double>(N - k);
}

namespace {

// 2 F^{-1}(delta) for a positive law
double positive_side(const NonzeroDistribution& dist, double delta, const BetaStarOptions& opts) {
  if (opts.normal_tail_z && dist.is_normal()) {
    const auto& n = std::get<NormalLaw>(dist.law());
    return 2.0 * (n.mean - *opts.normal_tail_z * n.stddev);
  }
  return 2.0 * dist.quantile(delta);
}

// 2 F^{-1}(1 - delta) for a negative law (a negative number when well posed)
double negative_side(const NonzeroDistribution& dist, double delta, const BetaStarOptions& opts) {
  if (opts.normal_tail_z && dist.is_normal()) {
    const auto& n = std::get<NormalLaw>(dist.law());
    return 2.0 * (n.mean + *opts.normal_tail_z * n.stddev);
  }
  return 2.0 * dist.quantile(1.0 - delta);
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
}

}  // namespace

double beta_star_one_sided(const NonzeroDistribution& dist, double delta, BetaStarOptions opts) {
  check_delta(delta);
  const double m = dist.mean();
  double beta;
  if (m >= 0.0) {
    beta = std::min(m, positive_side(dist, delta, opts));
  } else {
    beta = std::min(-m, -negative_side(dist, delta, opts));
  }
  if (!(beta > 0.0)) throw std::domain_error("beta*: distribution too dispersed for a positive amplitude");
  return beta;
}

double beta_star_two_sided(const SignalModel& model, double delta, BetaStarOptions opts) {
  check_delta(delta);
  const auto* law = std::get_if<TwoSidedSignal>(&model.law());
  if (law == nullptr) throw std::invalid_argument("beta_star_two_sided: model is not two-sided");
  if (law->p_positive < delta || 1.0 - law->p_positive < delta)
    throw std::invalid_argument("beta_star_two_sided: one sign has mass below delta; use the one-sided rule");
  const double plus = positive_side(law->positive, delta, opts);
  const double minus = negative_side(law->negative, delta, opts);
  if (!(plus > 0.0) || !(minus < 0.0)) throw std::domain_error("beta*: conditional law too dispersed");
  return std::min(std::abs(plus), std::abs(minus));
}

double proxy_beta(const SignalModel& model, double delta, BetaStarOptions opts) {
  switch (model.kind()) {
    case SignalKind::Constant:
      return std::get<ConstantSignal>(model.law()).beta;
    case SignalKind::OneSided: {
      const auto& o = std::get<OneSidedSignal>(model.law());
      const double b = beta_star_one_sided(o.dist, delta, opts);
      return o.negative ? -b : b;
    }
    case SignalKind::TwoSided:
      return beta_star_two_sided(model, delta, opts);
  }
  throw std::logic_error("unreachable");
}

ProxyParams::ProxyParams(double beta_star_in, double sigma2_in, Vector priors_in, int K_in, Index N_in)
    : beta_star(beta_star_in), sigma2(sigma2_in), priors(std::move(priors_in)), K(K_in), N(N_in) {
  if (!std::isfinite(beta_star) || beta_star == 0.0) throw std::invalid_argument("beta* must be finite and nonzero");
  if (K < 1 || K >= N - 1) throw std::invalid_argument("proxy needs 1 <= K < N - 1");
  if (!(sigma2 >= 0.0)) throw std::invalid_argument("sigma2 must be >= 0");
  if (priors.size() == 0) priors = Vector::Constant(N, 0.5);
  if (priors.size() != N) throw std::invalid_argument("prior length differs from N");
  priors = clamp_priors(priors);
  uniform_ = (priors.array() == priors[0]).all();
  if (sigma2 == 0.0 && !uniform_) throw std::invalid_argument("sigma2 = 0 is only supported with uniform priors");
  log_odds_ = priors.unaryExpr([](double p) { return bmap::log_odds(p); });
}

ProxyParams make_proxy_params(const RecoveryProblem& problem, double beta_star) {
  return ProxyParams(beta_star, problem.sigma2(), problem.priors(), problem.K(), problem.N());
}

kernels::ProxyCoefficients proxy_coefficients(int k, const ProxyParams& params, double beta, bool two_sided) {
  if (k < 1 || k > params.K) throw std::invalid_argument("proxy iteration k must lie in [1, K]");
  const double lam = lambda_k(params.K, params.N, k);
  const double lam_next = lambda_k(params.K, params.N, k + 1);
  return {beta, lam, lam_next, params.sigma2 > 0.0 ? 1.0 / params.sigma2 : 1.0, 1.0 - lam, two_sided};
}

Vector unselected_column_sum(const Matrix& A, const IndexList& selected) {
  Vector s = A.rowwise().sum();
  for (Index j : selected) s -= A.col(j);
  return s;
}

Vector bmap_scores_all(const Matrix& A, const Vector& r, const Vector& unselected_colsum, int k,
                       const ProxyParams& params, bool two_sided, Exec exec) {
  if (A.cols() != params.N) throw std::invalid_argument("bmap_scores: A has the wrong column count");
  const auto coeffs = proxy_coefficients(k, params, params.beta_star, two_sided);
  Vector out;
  kernels::bmap_scores(exec, A, r, unselected_colsum, params.log_odds(), coeffs, out);
  return out;
}

namespace {

Vector masked_scores(const Matrix& A, const Vector& r, const SupportEstimate& selected, int k,
                     const ProxyParams& params, bool two_sided, Exec exec) {
  if (static_cast<std::size_t>(k) != selected.size() + 1)
    throw std::invalid_argument("bmap_scores: k must equal |selected| + 1");
  for (Index j : selected.indices)
    if (j < 0 || j >= A.cols()) throw std::invalid_argument("bmap_scores: selected index out of range");
  Vector out = bmap_scores_all(A, r, unselected_column_sum(A, selected.indices), k, params, two_sided, exec);
  for (Index j : selected.indices) out[j] = -std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace

Vector bmap_scores(const Matrix& A, const Vector& r, const SupportEstimate& selected, int k,
                   const ProxyParams& params, Exec exec) {
  return masked_scores(A, r, selected, k, params, false, exec);
}

Vector bmap_scores_two_sided(const Matrix& A, const Vector& r, const SupportEstimate& selected, int k,
                             const ProxyParams& params, Exec exec) {
  return masked_scores(A, r, selected, k, params, true, exec);
}

Vector omp_scores(const Matrix& A, const Vector& r, Exec exec) {
  Vector out;
  kernels::abs_correlation(exec, A, r, out);
  return out;
}

Index argmax_lowest(const Vector& scores) {
  Index best = -1;
  double best_val = -std::numeric_limits<double>::infinity();
  for (Index j = 0; j < scores.size(); ++j) {
    if (scores[j] > best_val) {
      best_val = scores[j];
      best = j;
    }
  }
  return best;
}

IndexList top_indices(const Vector& scores, Index count) {
  IndexList order;
  for (Index j = 0; j < scores.size(); ++j)
    if (scores[j] > -std::numeric_limits<double>::infinity()) order.push_back(j);
  const auto take = std::min<std::size_t>(static_cast<std::size_t>(std::max<Index>(count, 0)), order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](Index a, Index b) { return scores[a] > scores[b] || (scores[a] == scores[b] && a < b); });
  order.resize(take);
  return order;
}

}  // namespace bmap
