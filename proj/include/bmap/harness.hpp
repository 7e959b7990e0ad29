#pragma once

#include "bmap/core_model.hpp"
#include "bmap/ensembles.hpp"
#include "bmap/solvers.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bmap {

inline constexpr const char* kVersion = "1.0.0";

struct PriorMode {
  enum class Kind { Uniform, SupportBoost };
  Kind kind = Kind::Uniform;
  /// Prior given to every true-support index under SupportBoost.
  double p_hi = 0.55;
};

struct SweepAlgorithm {
  std::string label;  // CSV "algorithm" column
  SolverConfig config;
};

/// Monte Carlo experiment description. snr_db absent means noise-free.
struct SweepSpec {
  Index N = 0;
  Index M = 0;
  std::vector<int> K_values;
  MatrixEnsemble ensemble = MatrixEnsemble::GaussianInvM;
  SignalModel signal = SignalModel::constant(1.0);
  std::optional<double> snr_db;
  std::vector<SweepAlgorithm> algorithms;
  int trials = 1;
  std::uint64_t base_seed = 0;
  PriorMode prior_mode;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Everything drawn for one (K, trial): shared by every algorithm in the trial.
struct TrialInstance {
  RecoveryProblem problem;
  GroundTruth truth;
  /// FNV-1a over A, y and the support; equal draws give equal fingerprints.
  std::uint64_t fingerprint;
};

/// Deterministic in (base_seed, K, trial_idx); independent of the algorithm.
TrialInstance draw_trial(const SweepSpec& spec, int K, std::uint64_t trial_idx);

struct TrialOutcome {
  bool success;
  SupportEstimate estimate;
  std::uint64_t fingerprint;
};

TrialOutcome run_trial_detailed(const SweepSpec& spec, int K, const SweepAlgorithm& alg, std::uint64_t trial_idx,
                                const IterationObserver& observer = {});

inline bool run_trial(const SweepSpec& spec, int K, const SweepAlgorithm& alg, std::uint64_t trial_idx) {
  return run_trial_detailed(spec, K, alg, trial_idx).success;
}

struct SweepRow {
  std::string algorithm;
  int K = 0;
  int successes = 0;
  int trials = 0;
  double recon_prob = 0.0;
  double mean_runtime = 0.0;  // seconds per solve
};

struct SweepResult {
  SweepSpec spec;
  /// Ordered by algorithm (spec order), then K (spec order).
  std::vector<SweepRow> rows;
  double wall_clock = 0.0;
  std::string version = kVersion;
};

/// Trials are spread over an OpenMP team (threads = 0 uses the runtime
/// default). Each (K, trial) draws once and runs every algorithm on the draw.
/// Results do not depend on the thread count.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

/// Single-threaded reference for run_sweep.
SweepResult run_sweep_serial(const SweepSpec& spec);

}  // namespace bmap
