#include "bmap/oracle.hpp"

#include "bmap/proxy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace bmap {

double binomial(Index n, Index k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

void LogSumExp::add(double x) {
  if (x == -std::numeric_limits<double>::infinity()) return;
  if (x <= max_) {
    scaled_sum_ += std::exp(x - max_);
  } else {
    scaled_sum_ = scaled_sum_ * std::exp(max_ - x) + 1.0;
    max_ = x;
  }
}

void LogSumExp::merge(const LogSumExp& other) {
  if (other.scaled_sum_ == 0.0) return;
  if (scaled_sum_ == 0.0) {
    *this = other;
    return;
  }
  const double m = std::max(max_, other.max_);
  scaled_sum_ = scaled_sum_ * std::exp(max_ - m) + other.scaled_sum_ * std::exp(other.max_ - m);
  max_ = m;
}

double LogSumExp::value() const {
  return scaled_sum_ == 0.0 ? -std::numeric_limits<double>::infinity() : max_ + std::log(scaled_sum_);
}

namespace {

double constant_beta(const SignalModel& model) {
  const auto* c = std::get_if<ConstantSignal>(&model.law());
  if (c == nullptr) throw std::invalid_argument("oracle requires a constant-amplitude signal model");
  return c->beta;
}

void guard(Index n, Index k) {
  if (binomial(n, k) > kEnumerationLimit) throw InstanceTooLarge("enumeration exceeds C(N, K) guard");
}

// Visits every completion of `fixed` to a K-subset of [N], as a sorted list.
template <class Fn>
void for_each_completion(Index N, int K, const IndexList& fixed, Fn&& fn) {
  IndexList fixed_sorted = fixed;
  std::sort(fixed_sorted.begin(), fixed_sorted.end());
  IndexList pool;
  for (Index j = 0; j < N; ++j)
    if (!std::binary_search(fixed_sorted.begin(), fixed_sorted.end(), j)) pool.push_back(j);
  const Index free = K - static_cast<Index>(fixed_sorted.size());
  if (free < 0) return;
  guard(static_cast<Index>(pool.size()), free);

  std::vector<std::size_t> pos(static_cast<std::size_t>(free));
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  IndexList subset;
  while (true) {
    subset = fixed_sorted;
    for (auto p : pos) subset.push_back(pool[p]);
    std::sort(subset.begin(), subset.end());
    fn(subset);
    // next combination of positions
    std::ptrdiff_t t = static_cast<std::ptrdiff_t>(free) - 1;
    while (t >= 0 && pos[static_cast<std::size_t>(t)] == pool.size() - static_cast<std::size_t>(free) + static_cast<std::size_t>(t)) --t;
    if (t < 0) break;
    ++pos[static_cast<std::size_t>(t)];
    for (auto u = static_cast<std::size_t>(t) + 1; u < pos.size(); ++u) pos[u] = pos[u - 1] + 1;
  }
}

double residual_sq(const RecoveryProblem& problem, double beta, const IndexList& support) {
  Vector r = problem.y();
  for (Index j : support) r -= beta * problem.A().col(j);
  return r.squaredNorm();
}

double log_prior(const RecoveryProblem& problem, const IndexList& support) {
  const Vector& p = problem.priors();
  double acc = 0.0;
  std::size_t s = 0;
  for (Index j = 0; j < problem.N(); ++j) {
    if (s < support.size() && support[s] == j) {
      acc += std::log(p[j]);
      ++s;
    } else {
      acc += std::log1p(-p[j]);
    }
  }
  return acc;
}

LogSumExp sum_over(const RecoveryProblem& problem, double beta, const IndexList& fixed) {
  LogSumExp acc;
  for_each_completion(problem.N(), problem.K(), fixed,
                      [&](const IndexList& s) { acc.add(log_joint(problem, beta, s)); });
  return acc;
}

void require_noise(const RecoveryProblem& problem) {
  if (!(problem.sigma2() > 0.0)) throw std::invalid_argument("posterior enumeration requires sigma2 > 0");
}

}  // namespace

double log_joint(const RecoveryProblem& problem, double beta, const IndexList& support) {
  const double s2 = problem.sigma2();
  const double M = static_cast<double>(problem.M());
  return log_prior(problem, support) - 0.5 * M * std::log(2.0 * std::numbers::pi * s2) -
         residual_sq(problem, beta, support) / (2.0 * s2);
}

IndexList exact_map_support(const RecoveryProblem& problem, const SignalModel& model) {
  const double beta = constant_beta(model);
  IndexList best;
  double best_score = -std::numeric_limits<double>::infinity();
  const bool noiseless = problem.sigma2() == 0.0;
  for_each_completion(problem.N(), problem.K(), {}, [&](const IndexList& s) {
    const double score = noiseless ? -residual_sq(problem, beta, s) : log_joint(problem, beta, s);
    if (score > best_score) {
      best_score = score;
      best = s;
    }
  });
  return best;
}

double exact_log_bitwise_posterior(const RecoveryProblem& problem, const SignalModel& model,
                                   const SupportEstimate& given, Index i) {
  require_noise(problem);
  const double beta = constant_beta(model);
  if (given.contains(i)) throw std::invalid_argument("candidate already in the conditioning set");
  if (static_cast<int>(given.size()) >= problem.K()) throw std::invalid_argument("conditioning set already has K indices");
  IndexList with_i = given.indices;
  with_i.push_back(i);
  return sum_over(problem, beta, with_i).value() - sum_over(problem, beta, given.indices).value();
}

BoundBreakdown theorem1_bound(const RecoveryProblem& problem, const SignalModel& model, const SupportEstimate& given,
                              Index i_k, bool with_constants) {
  require_noise(problem);
  const double beta = constant_beta(model);
  const Matrix& A = problem.A();
  const Index N = problem.N();
  const int K = problem.K();
  const int k = static_cast<int>(given.size()) + 1;
  if (k > K) throw std::invalid_argument("theorem1_bound: conditioning set already has K indices");
  if (i_k < 0 || i_k >= N || given.contains(i_k)) throw std::invalid_argument("theorem1_bound: invalid candidate");

  const double lam = lambda_k(K, N, k);
  const double lam_next = lambda_k(K, N, k + 1);
  const double s2 = problem.sigma2();

  // alpha_j = 1 on I = given + {i_k}, lambda_k elsewhere
  std::vector<bool> in_I(static_cast<std::size_t>(N), false);
  for (Index j : given.indices) in_I[static_cast<std::size_t>(j)] = true;
  in_I[static_cast<std::size_t>(i_k)] = true;

  BoundBreakdown out{};
  for (Index j = 0; j < N; ++j)
    out.kl_sum -= kl_bernoulli(in_I[static_cast<std::size_t>(j)] ? 1.0 : lam, problem.priors()[j]);

  Vector r = problem.y();
  for (Index j : given.indices) r -= beta * A.col(j);

  Vector mean_v = A.col(i_k);
  for (Index j = 0; j < N; ++j)
    if (!in_I[static_cast<std::size_t>(j)]) mean_v += lam * A.col(j);
  out.likelihood_term = beta / s2 * mean_v.dot(r);

  // pi_{k-1}: unselected indices in increasing order
  IndexList unselected;
  for (Index j = 0; j < N; ++j)
    if (!given.contains(j)) unselected.push_back(j);
  const auto n_u = static_cast<Index>(unselected.size());
  Matrix A_u(A.rows(), n_u);
  Index pos_ik = -1;
  for (Index c = 0; c < n_u; ++c) {
    A_u.col(c) = A.col(unselected[static_cast<std::size_t>(c)]);
    if (unselected[static_cast<std::size_t>(c)] == i_k) pos_ik = c;
  }
  const Matrix Q = A_u.transpose() * A_u;
  Matrix R(n_u, n_u);
  for (Index a = 0; a < n_u; ++a) {
    for (Index b = 0; b < n_u; ++b) {
      if (a == pos_ik && b == pos_ik) R(a, b) = 1.0;
      else if (a != pos_ik && b != pos_ik && a != b) R(a, b) = lam * lam_next;
      else R(a, b) = lam;
    }
  }
  out.trace_term = -(beta * beta) / (2.0 * s2) * (Q * R).trace();
  out.total = out.kl_sum + out.likelihood_term + out.trace_term;

  if (with_constants) {
    BoundConstants c{};
    IndexList full;  // unconstrained
    const double log_all = sum_over(problem, beta, full).value();
    c.D1 = sum_over(problem, beta, given.indices).value() - log_all;

    LogSumExp log_z;  // normalizer of the constrained prior
    for_each_completion(N, K, {}, [&](const IndexList& s) { log_z.add(log_prior(problem, s)); });
    const double log_fy = log_all - log_z.value();
    c.D2 = log_fy - std::log(binomial(N - k, K - k));
    c.D3 = static_cast<double>(N - k) * binary_entropy(lam);
    c.D4 = 0.5 * static_cast<double>(problem.M()) * std::log(2.0 * std::numbers::pi * s2) + r.squaredNorm() / (2.0 * s2);
    c.C1 = c.D1 + c.D2 + c.D3 + c.D4;
    out.constants = c;
  }
  return out;
}

namespace {

// log(1 - exp(-x)) for x in [0, inf]
double log1m_exp_neg(double x) {
  if (std::isinf(x)) return 0.0;
  return std::log(-std::expm1(-x));
}

void check_bound_args(Index M, Index N, int K, double sigma2) {
  if (M < 1 || K < 1 || N <= K + 1 || !(sigma2 >= 0.0)) throw std::invalid_argument("bound needs M >= 1, N > K + 1, sigma2 >= 0");
}

}  // namespace

double success_prob_lower_bound(Index M, Index N, int K, double sigma2) {
  check_bound_args(M, N, K, sigma2);
  const double m = static_cast<double>(M);
  double log_p = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double spread = static_cast<double>(K - k) * static_cast<double>(N - K - 1) / static_cast<double>(N - k - 1);
    const double denom = 4.0 * (m * sigma2 + spread);
    const double x = denom == 0.0 ? std::numeric_limits<double>::infinity() : m / denom;
    log_p += static_cast<double>(N - K) * log1m_exp_neg(x);
  }
  return std::exp(log_p);
}

double success_prob_lower_bound_relaxed(Index M, Index N, int K, double sigma2) {
  check_bound_args(M, N, K, sigma2);
  const double m = static_cast<double>(M);
  const double denom = 4.0 * (m * sigma2 + (K - 1));
  const double x = denom == 0.0 ? std::numeric_limits<double>::infinity() : m / denom;
  return std::exp(static_cast<double>(K) * static_cast<double>(N - K) * log1m_exp_neg(x));
}

long measurement_scaling(Index N, int K, double delta_snr, double c) {
  if (!(delta_snr > 0.0) || !(c > 0.0) || N < 1 || K < 1) throw std::invalid_argument("measurement_scaling: bad arguments");
  return static_cast<long>(std::ceil(c * (1.0 + 1.0 / delta_snr) * K * std::log(static_cast<double>(N))));
}

std::vector<double> lemma1_projection_samples(Index M, std::size_t n_samples, Rng& rng) {
  if (M < 2) throw std::invalid_argument("lemma1_projection_samples: need M >= 2");
  const double sd = 1.0 / std::sqrt(static_cast<double>(M));
  std::vector<double> out;
  out.reserve(n_samples);
  Vector ai(M), aj(M), al(M);
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (Index t = 0; t < M; ++t) ai[t] = sd * rng.normal();
    for (Index t = 0; t < M; ++t) aj[t] = sd * rng.normal();
    for (Index t = 0; t < M; ++t) al[t] = sd * rng.normal();
    const Vector d = ai - aj;
    out.push_back(al.dot(d) / d.norm());
  }
  return out;
}

double ks_statistic_normal(std::vector<double> samples, double variance) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic_normal: no samples");
  std::sort(samples.begin(), samples.end());
  const double sd = std::sqrt(variance);
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = normal_cdf(samples[i] / sd);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - F, F - static_cast<double>(i) / n});
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

}  // namespace bmap
