#pragma once

#include "bmap/core_model.hpp"
#include "bmap/distributions.hpp"
#include "bmap/kernels.hpp"
#include "bmap/proxy.hpp"

#include <functional>
#include <optional>
#include <string_view>

namespace bmap {

enum class Algorithm { BMAP, BCoSaMP, BSP, OMP, CoSaMP, SP };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);
/// True for the algorithms driven by the B-MAP proxy (and so by the priors).
bool uses_bmap_proxy(Algorithm a);

/// FixedBeta subtracts beta a_i per selection; LeastSquares refits on the
/// selected columns.
enum class ResidualMode { FixedBeta, LeastSquares };

struct SolverConfig {
  Algorithm algorithm = Algorithm::BMAP;
  /// Unset: FixedBeta for constant models, LeastSquares otherwise.
  std::optional<ResidualMode> residual_mode;
  /// Unset: two-sided exactly when the signal model is.
  std::optional<bool> two_sided;
  /// 0 picks the default: 2K for the iterative algorithms. Greedy solvers
  /// always run K iterations.
  int max_iters = 0;
  /// 0 picks the default: 2K for CoSaMP, K otherwise.
  int selection_size = 0;
  double beta_delta = kDefaultBetaDelta;
  BetaStarOptions beta_options;
  Exec exec = Exec::Serial;
};

/// Relative residual decrease below which the iterative solvers stop.
inline constexpr double kStallTolerance = 1e-8;

struct SolverState {
  SupportEstimate selected;
  /// Reconstruction weights aligned with selected.indices.
  Vector coefficients;
  Vector residual;
  /// A * 1 minus the selected columns.
  Vector unselected_colsum;
  int iter = 0;
  double best_residual_norm = 0.0;
};

/// Called after every iteration; used for tracing and invariant checks.
using IterationObserver = std::function<void(const SolverState&)>;

int default_selection_size(Algorithm a, int K);
int default_max_iters(Algorithm a, int K);

/// Greedy B-MAP (fixed-beta or least-squares residual).
SupportEstimate bmap_greedy(const RecoveryProblem& problem, const SignalModel& model, const SolverConfig& cfg,
                            const IterationObserver& observer = {});
SupportEstimate b_cosamp(const RecoveryProblem& problem, const SignalModel& model, const SolverConfig& cfg,
                         const IterationObserver& observer = {});
SupportEstimate b_sp(const RecoveryProblem& problem, const SignalModel& model, const SolverConfig& cfg,
                     const IterationObserver& observer = {});

SupportEstimate omp(const RecoveryProblem& problem, const SolverConfig& cfg, const IterationObserver& observer = {});
SupportEstimate cosamp(const RecoveryProblem& problem, const SolverConfig& cfg,
                       const IterationObserver& observer = {});
SupportEstimate sp(const RecoveryProblem& problem, const SolverConfig& cfg, const IterationObserver& observer = {});

/// Dispatches on cfg.algorithm.
SupportEstimate solve(const RecoveryProblem& problem, const SignalModel& model, const SolverConfig& cfg,
                      const IterationObserver& observer = {});

}  // namespace bmap
