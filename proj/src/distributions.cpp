#include "bmap/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bmap {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw std::domain_error("normal_quantile: p outside [0, 1]");
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley refinement
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

NonzeroDistribution NonzeroDistribution::uniform(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("uniform law needs finite lo < hi");
  return NonzeroDistribution(UniformLaw{lo, hi});
}

NonzeroDistribution NonzeroDistribution::normal(double mean, double stddev) {
  if (!(stddev > 0.0) || !std::isfinite(mean)) throw std::invalid_argument("normal law needs stddev > 0");
  return NonzeroDistribution(NormalLaw{mean, stddev});
}

double NonzeroDistribution::mean() const {
  return std::visit(Overloaded{[](const UniformLaw& u) { return 0.5 * (u.lo + u.hi); },
                               [](const NormalLaw& n) { return n.mean; }},
                    law_);
}

double NonzeroDistribution::second_moment() const {
  return std::visit(
      Overloaded{[](const UniformLaw& u) { return (u.lo * u.lo + u.lo * u.hi + u.hi * u.hi) / 3.0; },
                 [](const NormalLaw& n) { return n.mean * n.mean + n.stddev * n.stddev; }},
      law_);
}

double NonzeroDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("quantile level outside [0, 1]");
  return std::visit(Overloaded{[u](const UniformLaw& l) { return l.lo + u * (l.hi - l.lo); },
                               [u](const NormalLaw& n) { return n.mean + n.stddev * normal_quantile(u); }},
                    law_);
}

double NonzeroDistribution::sample(Rng& rng) const {
  return std::visit(Overloaded{[&rng](const UniformLaw& l) { return rng.uniform(l.lo, l.hi); },
                               [&rng](const NormalLaw& n) { return rng.normal(n.mean, n.stddev); }},
                    law_);
}

SignalModel SignalModel::constant(double beta) {
  if (beta == 0.0 || !std::isfinite(beta)) throw std::invalid_argument("constant signal needs a finite nonzero beta");
  return SignalModel(ConstantSignal{beta});
}

SignalModel SignalModel::one_sided(NonzeroDistribution dist, double sign_probe) {
  if (dist.quantile(sign_probe) > 0.0) return SignalModel(OneSidedSignal{dist, false});
  if (dist.quantile(1.0 - sign_probe) < 0.0) return SignalModel(OneSidedSignal{dist, true});
  throw std::invalid_argument("distribution is not one-sided at the sign probe level");
}

SignalModel SignalModel::two_sided(double p_positive, NonzeroDistribution positive, NonzeroDistribution negative,
                                   double sign_probe) {
  if (!(p_positive >= 0.0 && p_positive <= 1.0)) throw std::invalid_argument("p_positive outside [0, 1]");
  if (!(positive.quantile(sign_probe) > 0.0))
    throw std::invalid_argument("positive conditional law puts mass below zero");
  if (!(negative.quantile(1.0 - sign_probe) < 0.0))
    throw std::invalid_argument("negative conditional law puts mass above zero");
  return SignalModel(TwoSidedSignal{p_positive, positive, negative});
}

SignalKind SignalModel::kind() const {
  return static_cast<SignalKind>(law_.index());
}

double SignalModel::second_moment() const {
  return std::visit(Overloaded{[](const ConstantSignal& c) { return c.beta * c.beta; },
                               [](const OneSidedSignal& o) { return o.dist.second_moment(); },
                               [](const TwoSidedSignal& t) {
                                 return t.p_positive * t.positive.second_moment() +
                                        (1.0 - t.p_positive) * t.negative.second_moment();
                               }},
                    law_);
}

double SignalModel::sample(Rng& rng) const {
  return std::visit(Overloaded{[](const ConstantSignal& c) { return c.beta; },
                               [&rng](const OneSidedSignal& o) { return o.dist.sample(rng); },
                               [&rng](const TwoSidedSignal& t) {
                                 return rng.bernoulli(t.p_positive) ? t.positive.sample(rng) : t.negative.sample(rng);
                               }},
                    law_);
}

}  // namespace bmap
