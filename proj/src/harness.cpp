#include "bmap/harness.hpp"

#include <omp.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace bmap {

namespace {

constexpr std::uint64_t kMatrixStream = 1;
constexpr std::uint64_t kSupportStream = 2;
constexpr std::uint64_t kSignalStream = 3;
constexpr std::uint64_t kNoiseStream = 4;

void fail(const std::string& field, const std::string& why) {
  throw std::invalid_argument("sweep spec field '" + field + "': " + why);
}

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001B3ull;
    }
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xCBF29CE484222325ull;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void SweepSpec::validate() const {
  if (N < 1) fail("N", "must be positive");
  if (M < 1) fail("M", "must be positive");
  if (N < M) fail("N", "must be >= M");
  if (trials < 1) fail("trials", "must be >= 1");
  for (int K : K_values) {
    if (K < 1) fail("K_values", "entries must be >= 1");
    if (2 * K > M) fail("K_values", "entries must satisfy 2K <= M");
    if (N <= K + 1) fail("K_values", "entries must satisfy K + 1 < N");
  }
  if (snr_db && !std::isfinite(*snr_db)) fail("snr_db", "must be finite (omit it for noise-free runs)");
  if (prior_mode.kind == PriorMode::Kind::SupportBoost) {
    if (!(prior_mode.p_hi > 0.0 && prior_mode.p_hi < 1.0)) fail("prior_mode", "p_hi must lie in (0, 1)");
    if (!snr_db) fail("prior_mode", "non-uniform priors need a noisy setting (snr_db)");
  }
}

TrialInstance draw_trial(const SweepSpec& spec, int K, std::uint64_t trial_idx) {
  const Rng root(spec.base_seed, mix64(mix64(static_cast<std::uint64_t>(K)) + trial_idx));
  Rng matrix_rng = root.substream(kMatrixStream);
  Rng support_rng = root.substream(kSupportStream);
  Rng signal_rng = root.substream(kSignalStream);
  Rng noise_rng = root.substream(kNoiseStream);

  Matrix A = generate_matrix(spec.ensemble, spec.M, spec.N, matrix_rng);
  const IndexList support = sample_support(spec.N, K, Vector(), support_rng);
  GroundTruth truth = sample_signal(spec.signal, support, spec.N, signal_rng);
  const double sigma2 = spec.snr_db ? sigma2_from_snr(spec.signal, K, spec.M, snr_db_to_linear(*spec.snr_db)) : 0.0;
  Vector y = measure(A, truth, sigma2, noise_rng);

  Vector priors = Vector::Constant(spec.N, 0.5);
  if (spec.prior_mode.kind == PriorMode::Kind::SupportBoost)
    for (Index j : truth.support) priors[j] = spec.prior_mode.p_hi;

  Fnv1a h;
  h.bytes(A.data(), sizeof(double) * static_cast<std::size_t>(A.size()));
  h.bytes(y.data(), sizeof(double) * static_cast<std::size_t>(y.size()));
  h.bytes(truth.support.data(), sizeof(Index) * truth.support.size());

  const std::uint64_t fp = h.value();
  return TrialInstance{RecoveryProblem(std::move(A), std::move(y), K, sigma2, std::move(priors)), std::move(truth), fp};
}

TrialOutcome run_trial_detailed(const SweepSpec& spec, int K, const SweepAlgorithm& alg, std::uint64_t trial_idx,
                                const IterationObserver& observer) {
  const TrialInstance inst = draw_trial(spec, K, trial_idx);
  SupportEstimate est = solve(inst.problem, spec.signal, alg.config, observer);
  const bool ok = exact_recovery(est, inst.truth);
  return {ok, std::move(est), inst.fingerprint};
}

namespace {

struct Tally {
  std::vector<unsigned char> success;  // [alg][K][trial]
  std::vector<double> runtime;
};

// One (K, trial) task: draw once, run all algorithms.
void run_task(const SweepSpec& spec, std::size_t k_idx, int trial, Tally& tally) {
  const int K = spec.K_values[k_idx];
  const TrialInstance inst = draw_trial(spec, K, static_cast<std::uint64_t>(trial));
  const std::size_t n_k = spec.K_values.size();
  const auto n_t = static_cast<std::size_t>(spec.trials);
  for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
    const auto t0 = std::chrono::steady_clock::now();
    const SupportEstimate est = solve(inst.problem, spec.signal, spec.algorithms[a].config);
    const std::size_t slot = (a * n_k + k_idx) * n_t + static_cast<std::size_t>(trial);
    tally.runtime[slot] = seconds_since(t0);
    tally.success[slot] = exact_recovery(est, inst.truth) ? 1 : 0;
  }
}

SweepResult aggregate(const SweepSpec& spec, const Tally& tally, double wall) {
  SweepResult out;
  out.spec = spec;
  out.wall_clock = wall;
  const std::size_t n_k = spec.K_values.size();
  const auto n_t = static_cast<std::size_t>(spec.trials);
  for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
    for (std::size_t ki = 0; ki < n_k; ++ki) {
      SweepRow row;
      row.algorithm = spec.algorithms[a].label;
      row.K = spec.K_values[ki];
      row.trials = spec.trials;
      double time = 0.0;
      for (std::size_t t = 0; t < n_t; ++t) {
        const std::size_t slot = (a * n_k + ki) * n_t + t;
        row.successes += tally.success[slot];
        time += tally.runtime[slot];
      }
      row.recon_prob = static_cast<double>(row.successes) / static_cast<double>(row.trials);
      row.mean_runtime = time / static_cast<double>(row.trials);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

Tally make_tally(const SweepSpec& spec) {
  const std::size_t n = spec.algorithms.size() * spec.K_values.size() * static_cast<std::size_t>(spec.trials);
  return Tally{std::vector<unsigned char>(n, 0), std::vector<double>(n, 0.0)};
}

std::string cell_context(const SweepSpec& spec, std::size_t k_idx, int trial) {
  return "cell K=" + std::to_string(spec.K_values[k_idx]) + " trial=" + std::to_string(trial);
}

}  // namespace

SweepResult run_sweep_serial(const SweepSpec& spec) {
  spec.validate();
  const auto t0 = std::chrono::steady_clock::now();
  Tally tally = make_tally(spec);
  for (std::size_t ki = 0; ki < spec.K_values.size(); ++ki) {
    for (int t = 0; t < spec.trials; ++t) {
      try {
        run_task(spec, ki, t, tally);
      } catch (const std::exception& e) {
        throw std::runtime_error(cell_context(spec, ki, t) + ": " + e.what());
      }
    }
  }
  return aggregate(spec, tally, seconds_since(t0));
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  const auto t0 = std::chrono::steady_clock::now();
  Tally tally = make_tally(spec);
  const auto n_tasks = static_cast<long>(spec.K_values.size()) * spec.trials;
  const int team = threads > 0 ? threads : omp_get_max_threads();

  std::atomic<bool> failed{false};
  long failed_task = -1;
  std::string failure;

#pragma omp parallel for schedule(dynamic) num_threads(team)
  for (long task = 0; task < n_tasks; ++task) {
    if (failed.load(std::memory_order_relaxed)) continue;
    const auto ki = static_cast<std::size_t>(task / spec.trials);
    const int t = static_cast<int>(task % spec.trials);
    try {
      run_task(spec, ki, t, tally);
    } catch (const std::exception& e) {
#pragma omp critical(bmap_sweep_failure)
      {
        if (failed_task < 0 || task < failed_task) {
          failed_task = task;
          failure = cell_context(spec, ki, t) + ": " + e.what();
        }
      }
      failed.store(true, std::memory_order_relaxed);
    }
  }
  if (failed) throw std::runtime_error(failure);
  return aggregate(spec, tally, seconds_since(t0));
}

}  // namespace bmap
