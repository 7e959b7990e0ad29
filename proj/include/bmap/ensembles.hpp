#pragma once

#include "bmap/core_model.hpp"
#include "bmap/distributions.hpp"
#include "bmap/rng.hpp"

#include <string>
#include <string_view>

namespace bmap {

enum class MatrixEnsemble {
  GaussianInvM,  // N(0, 1/M)
  Uniform01,     // U[0, 1]
  UniformSym,    // U[-0.5, 0.5]
  Bernoulli01,   // {0, 1} with probability 1/2
};

std::string_view to_string(MatrixEnsemble e);
MatrixEnsemble parse_ensemble(std::string_view name);

/// Entries are drawn column by column; columns are not normalized.
Matrix generate_matrix(MatrixEnsemble ens, Index M, Index N, Rng& rng);

/// K distinct indices, sorted. Uniform priors draw a uniformly random subset;
/// otherwise indices are drawn one at a time with weights p_j, without
/// replacement. An empty prior vector counts as uniform.
IndexList sample_support(Index N, int K, const Vector& priors, Rng& rng);

GroundTruth sample_signal(const SignalModel& model, const IndexList& support, Index N, Rng& rng);

/// sigma^2 = K E[x^2] / (M snr).
double sigma2_from_snr(const SignalModel& model, int K, Index M, double snr_linear);

double snr_db_to_linear(double snr_db);

/// y = A x + z, z ~ N(0, sigma2 I).
Vector measure(const Matrix& A, const GroundTruth& truth, double sigma2, Rng& rng);

}  // namespace bmap
