#include "bmap/core_model.hpp"

#include <algorithm>
#include <cmath>

namespace bmap {

namespace {

double xlogy_ratio(double a, double b) {
  // a * log(a / b) with 0 log 0 := 0
  return a == 0.0 ? 0.0 : a * std::log(a / b);
}

}  // namespace

Vector clamp_priors(const Vector& priors) {
  Vector out = priors;
  for (Index j = 0; j < out.size(); ++j) {
    const double p = out[j];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0)
      throw std::invalid_argument("prior outside [0, 1] at index " + std::to_string(j));
    out[j] = std::clamp(p, kPriorClamp, 1.0 - kPriorClamp);
  }
  return out;
}

RecoveryProblem::RecoveryProblem(Matrix A, Vector y, int K, double sigma2, Vector priors)
    : A_(std::move(A)), y_(std::move(y)), K_(K), sigma2_(sigma2) {
  const Index M = A_.rows();
  const Index N = A_.cols();
  if (M < 1) throw std::invalid_argument("measurement matrix needs at least one row");
  if (N < M) throw std::invalid_argument("expected N >= M");
  if (K < 1 || N <= K + 1) throw std::invalid_argument("expected 1 <= K and N > K + 1");
  if (y_.size() != M) throw std::invalid_argument("y length differs from the row count of A");
  if (!(sigma2_ >= 0.0) || !std::isfinite(sigma2_)) throw std::invalid_argument("sigma2 must be finite and >= 0");

  if (priors.size() == 0) priors = Vector::Constant(N, 0.5);
  if (priors.size() != N) throw std::invalid_argument("prior vector length differs from N");
  priors_ = clamp_priors(priors);
  uniform_priors_ = (priors_.array() == priors_[0]).all();

  if (sigma2_ == 0.0 && !uniform_priors_)
    throw std::invalid_argument("sigma2 = 0 requires uniform priors");
}

GroundTruth::GroundTruth(IndexList support_in, std::vector<double> values_in, Index N_in)
    : support(std::move(support_in)), values(std::move(values_in)), N(N_in) {
  if (support.size() != values.size())
    throw std::invalid_argument("support and values differ in length");
  // sort support together with values
  std::vector<std::size_t> order(support.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return support[a] < support[b]; });
  IndexList s(support.size());
  std::vector<double> v(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    s[i] = support[order[i]];
    v[i] = values[order[i]];
  }
  support = std::move(s);
  values = std::move(v);
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0 || support[i] >= N) throw std::invalid_argument("support index out of range");
    if (i > 0 && support[i] == support[i - 1]) throw std::invalid_argument("duplicate support index");
    if (values[i] == 0.0) throw std::invalid_argument("support value must be nonzero");
  }
}

Vector GroundTruth::dense() const {
  Vector x = Vector::Zero(N);
  for (std::size_t i = 0; i < support.size(); ++i) x[support[i]] = values[i];
  return x;
}

SupportEstimate::SupportEstimate(IndexList idx) : indices(std::move(idx)) {
  IndexList s = sorted();
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("duplicate index in support estimate");
}

bool SupportEstimate::contains(Index j) const {
  return std::find(indices.begin(), indices.end(), j) != indices.end();
}

IndexList SupportEstimate::sorted() const {
  IndexList s = indices;
  std::sort(s.begin(), s.end());
  return s;
}

bool exact_recovery(const SupportEstimate& est, const GroundTruth& truth) {
  return est.sorted() == truth.support;
}

double kl_bernoulli(double a, double b) {
  if (!(b > 0.0 && b < 1.0)) throw std::domain_error("kl_bernoulli: b must lie in (0, 1)");
  if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("kl_bernoulli: a must lie in [0, 1]");
  return xlogy_ratio(a, b) + xlogy_ratio(1.0 - a, 1.0 - b);
}

double binary_entropy(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("binary_entropy: argument outside [0, 1]");
  auto term = [](double t) { return t == 0.0 ? 0.0 : -t * std::log(t); };
  return term(a) + term(1.0 - a);
}

double log_odds(double p) { return std::log(p / (1.0 - p)); }

}  // namespace bmap
