#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace bmap {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using IndexList = std::vector<Index>;

/// Raised by exhaustive enumerations when C(N, K) exceeds the guard.
class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Priors are clamped into [kPriorClamp, 1 - kPriorClamp] on ingestion.
inline constexpr double kPriorClamp = 1e-12;

/// One trial's inputs: y = A x + z with a K-sparse x.
///
/// Requires M >= 1, N >= M, N > K + 1 and sigma2 >= 0. sigma2 == 0 is only
/// accepted together with uniform priors. An empty prior vector means 0.5
/// everywhere.
class RecoveryProblem {
 public:
  RecoveryProblem(Matrix A, Vector y, int K, double sigma2, Vector priors = {});

  const Matrix& A() const { return A_; }
  const Vector& y() const { return y_; }
  int K() const { return K_; }
  double sigma2() const { return sigma2_; }
  const Vector& priors() const { return priors_; }
  Index M() const { return A_.rows(); }
  Index N() const { return A_.cols(); }
  /// True when every prior equals the first one (the prior term is then constant).
  bool uniform_priors() const { return uniform_priors_; }

 private:
  Matrix A_;
  Vector y_;
  int K_;
  double sigma2_;
  Vector priors_;
  bool uniform_priors_;
};

/// True support and nonzero values, kept by the harness for scoring.
struct GroundTruth {
  GroundTruth(IndexList support, std::vector<double> values, Index N);

  IndexList support;  // sorted
  std::vector<double> values;
  Index N;

  /// Dense length-N signal.
  Vector dense() const;
};

/// Ordered selection (i_1, ..., i_k).
struct SupportEstimate {
  IndexList indices;

  SupportEstimate() = default;
  explicit SupportEstimate(IndexList idx);

  std::size_t size() const { return indices.size(); }
  bool contains(Index j) const;
  IndexList sorted() const;
};

bool exact_recovery(const SupportEstimate& est, const GroundTruth& truth);

/// KL(Bern(a) || Bern(b)) in nats, 0 log 0 := 0. Throws std::domain_error
/// unless 0 <= a <= 1 and 0 < b < 1.
double kl_bernoulli(double a, double b);

/// H2(a) in nats.
double binary_entropy(double a);

double log_odds(double p);

/// Validates a prior vector and clamps it away from {0, 1}.
Vector clamp_priors(const Vector& priors);

}  // namespace bmap
