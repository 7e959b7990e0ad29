#include "bmap/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bmap {

std::string_view to_string(MatrixEnsemble e) {
  switch (e) {
    case MatrixEnsemble::GaussianInvM: return "GaussianInvM";
    case MatrixEnsemble::Uniform01: return "Uniform01";
    case MatrixEnsemble::UniformSym: return "UniformSym";
    case MatrixEnsemble::Bernoulli01: return "Bernoulli01";
  }
  return "?";
}

MatrixEnsemble parse_ensemble(std::string_view name) {
  for (auto e : {MatrixEnsemble::GaussianInvM, MatrixEnsemble::Uniform01, MatrixEnsemble::UniformSym,
                 MatrixEnsemble::Bernoulli01})
    if (to_string(e) == name) return e;
  throw std::invalid_argument("unknown matrix ensemble: " + std::string(name));
}

Matrix generate_matrix(MatrixEnsemble ens, Index M, Index N, Rng& rng) {
  if (M < 1 || N < 1) throw std::invalid_argument("generate_matrix: M and N must be positive");
  Matrix A(M, N);
  const double sd = 1.0 / std::sqrt(static_cast<double>(M));
  for (Index j = 0; j < N; ++j) {
    for (Index i = 0; i < M; ++i) {
      switch (ens) {
        case MatrixEnsemble::GaussianInvM: A(i, j) = sd * rng.normal(); break;
        case MatrixEnsemble::Uniform01: A(i, j) = rng.uniform(); break;
        case MatrixEnsemble::UniformSym: A(i, j) = rng.uniform() - 0.5; break;
        case MatrixEnsemble::Bernoulli01: A(i, j) = (rng.next_u64() >> 63) ? 1.0 : 0.0; break;
      }
    }
  }
  return A;
}

IndexList sample_support(Index N, int K, const Vector& priors, Rng& rng) {
  if (K < 0 || K > N) throw std::invalid_argument("sample_support: need 0 <= K <= N");
  if (priors.size() != 0 && priors.size() != N) throw std::invalid_argument("sample_support: prior length differs from N");

  const bool uniform = priors.size() == 0 || (priors.array() == priors[0]).all();
  IndexList out;
  out.reserve(static_cast<std::size_t>(K));

  if (uniform) {
    // partial Fisher-Yates
    IndexList pool(static_cast<std::size_t>(N));
    std::iota(pool.begin(), pool.end(), Index{0});
    for (int t = 0; t < K; ++t) {
      const auto pick = t + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(N - t)));
      std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(pick)]);
      out.push_back(pool[static_cast<std::size_t>(t)]);
    }
  } else {
    std::vector<double> weight(priors.data(), priors.data() + N);
    for (double w : weight)
      if (!(w > 0.0)) throw std::invalid_argument("sample_support: weights must be positive");
    for (int t = 0; t < K; ++t) {
      const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
      double u = rng.uniform() * total;
      Index pick = -1;
      for (Index j = 0; j < N; ++j) {
        if (weight[static_cast<std::size_t>(j)] == 0.0) continue;
        pick = j;
        u -= weight[static_cast<std::size_t>(j)];
        if (u < 0.0) break;
      }
      out.push_back(pick);
      weight[static_cast<std::size_t>(pick)] = 0.0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

GroundTruth sample_signal(const SignalModel& model, const IndexList& support, Index N, Rng& rng) {
  std::vector<double> values;
  values.reserve(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    double v = model.sample(rng);
    while (v == 0.0) v = model.sample(rng);
    values.push_back(v);
  }
  return GroundTruth(support, std::move(values), N);
}

double sigma2_from_snr(const SignalModel& model, int K, Index M, double snr_linear) {
  if (!(snr_linear > 0.0)) throw std::invalid_argument("snr must be positive");
  if (std::isinf(snr_linear)) return 0.0;
  return static_cast<double>(K) * model.second_moment() / (static_cast<double>(M) * snr_linear);
}

double snr_db_to_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

Vector measure(const Matrix& A, const GroundTruth& truth, double sigma2, Rng& rng) {
  if (A.cols() != truth.N) throw std::invalid_argument("measure: A has the wrong column count");
  if (!(sigma2 >= 0.0)) throw std::invalid_argument("measure: sigma2 must be >= 0");
  Vector y = Vector::Zero(A.rows());
  for (std::size_t i = 0; i < truth.support.size(); ++i) y += truth.values[i] * A.col(truth.support[i]);
  if (sigma2 > 0.0) {
    const double sd = std::sqrt(sigma2);
    for (Index i = 0; i < y.size(); ++i) y[i] += sd * rng.normal();
  }
  return y;
}

}  // namespace bmap
