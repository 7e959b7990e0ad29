#pragma once

#include "bmap/rng.hpp"

#include <variant>

namespace bmap {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile: Acklam's rational approximation polished with one
/// Halley step against erfc; absolute error well below 1e-9 on (0, 1).
double normal_quantile(double p);

struct UniformLaw {
  double lo;
  double hi;
};

struct NormalLaw {
  double mean;
  double stddev;
};

/// Law of one nonzero amplitude: mean, quantile, second moment, sampling.
class NonzeroDistribution {
 public:
  static NonzeroDistribution uniform(double lo, double hi);
  static NonzeroDistribution normal(double mean, double stddev);

  double mean() const;
  double second_moment() const;
  double quantile(double u) const;
  double sample(Rng& rng) const;

  const std::variant<UniformLaw, NormalLaw>& law() const { return law_; }
  bool is_normal() const { return std::holds_alternative<NormalLaw>(law_); }

 private:
  explicit NonzeroDistribution(std::variant<UniformLaw, NormalLaw> law) : law_(law) {}
  std::variant<UniformLaw, NormalLaw> law_;
};

struct ConstantSignal {
  double beta;
};

/// Amplitudes of one sign with probability >= 1 - delta1. `negative` marks
/// the mirrored case.
struct OneSidedSignal {
  NonzeroDistribution dist;
  bool negative;
};

/// Sign drawn first (positive with probability p_positive), then the
/// amplitude from the matching conditional law.
struct TwoSidedSignal {
  double p_positive;
  NonzeroDistribution positive;
  NonzeroDistribution negative;
};

enum class SignalKind { Constant, OneSided, TwoSided };

class SignalModel {
 public:
  static constexpr double kDefaultSignProbe = 0.01;

  static SignalModel constant(double beta);
  /// Throws when neither P(x > 0) nor P(x < 0) reaches 1 - sign_probe.
  static SignalModel one_sided(NonzeroDistribution dist, double sign_probe = kDefaultSignProbe);
  static SignalModel two_sided(double p_positive, NonzeroDistribution positive, NonzeroDistribution negative,
                               double sign_probe = kDefaultSignProbe);

  SignalKind kind() const;
  const std::variant<ConstantSignal, OneSidedSignal, TwoSidedSignal>& law() const { return law_; }

  /// E[x_i^2] for a support entry.
  double second_moment() const;
  double sample(Rng& rng) const;

 private:
  explicit SignalModel(std::variant<ConstantSignal, OneSidedSignal, TwoSidedSignal> law) : law_(law) {}
  std::variant<ConstantSignal, OneSidedSignal, TwoSidedSignal> law_;
};

}  // namespace bmap
