#include "bmap/solvers.hpp"

#include "bmap/least_squares.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bmap {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::BMAP: return "BMAP";
    case Algorithm::BCoSaMP: return "BCoSaMP";
    case Algorithm::BSP: return "BSP";
    case Algorithm::OMP: return "OMP";
    case Algorithm::CoSaMP: return "CoSaMP";
    case Algorithm::SP: return "SP";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::BMAP, Algorithm::BCoSaMP, Algorithm::BSP, Algorithm::OMP, Algorithm::CoSaMP,
                 Algorithm::SP})
    if (to_string(a) == name) return a;
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

bool uses_bmap_proxy(Algorithm a) {
  return a == Algorithm::BMAP || a == Algorithm::BCoSaMP || a == Algorithm::BSP;
}

int default_selection_size(Algorithm a, int K) { return a == Algorithm::CoSaMP ? 2 * K : K; }

int default_max_iters(Algorithm a, int K) {
  return (a == Algorithm::BMAP || a == Algorithm::OMP) ? K : 2 * K;
}

namespace {

void require(Algorithm have, Algorithm want) {
  if (have != want)
    throw std::invalid_argument("solver called with algorithm " + std::string(to_string(have)) + ", expected " +
                                std::string(to_string(want)));
}

void mask(Vector& scores, const IndexList& selected) {
  for (Index j : selected) scores[j] = -std::numeric_limits<double>::infinity();
}

Vector reconstruct(const Matrix& A, const IndexList& idx, const Vector& coef) {
  Vector out = Vector::Zero(A.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) out += coef[static_cast<Index>(i)] * A.col(idx[i]);
  return out;
}

// Least-squares fit on idx; fills coefficients and residual.
void refit(const RecoveryProblem& problem, const IndexList& idx, Vector& coef, Vector& residual) {
  coef = least_squares(gather_columns(problem.A(), idx), problem.y());
  residual = problem.y() - reconstruct(problem.A(), idx, coef);
}

struct ProxySetup {
  ProxyParams params;
  bool two_sided;
};

ProxySetup make_proxy(const RecoveryProblem& problem, const SignalModel& model, const SolverConfig& cfg) {
  const double beta = proxy_beta(model, cfg.beta_delta, cfg.beta_options);
  return {make_proxy_params(problem, beta), cfg.two_sided.value_or(model.kind() == SignalKind::TwoSided)};
}

// Sequential selection shared by B-MAP and OMP: one index per iteration.
template <class ScoreFn>
SupportEstimate greedy(const RecoveryProblem& problem, ScoreFn&& score, ResidualMode mode, double beta,
                       bool two_sided, const IterationObserver& observer) {
  const Matrix& A = problem.A();
  SolverState state;
  state.residual = problem.y();
  state.unselected_colsum = A.rowwise().sum();
  state.coefficients.resize(0);

  for (int k = 1; k <= problem.K(); ++k) {
    Vector scores = score(state, k);
    mask(scores, state.selected.indices);
    const Index pick = argmax_lowest(scores);
    if (pick < 0) throw std::runtime_error("greedy selection found no finite score");

    if (mode == ResidualMode::FixedBeta) {
      double step = beta;
      if (two_sided && A.col(pick).dot(state.residual) < 0.0) step = -beta;
      state.residual -= step * A.col(pick);
      state.coefficients.conservativeResize(state.coefficients.size() + 1);
      state.coefficients[state.coefficients.size() - 1] = step;
      state.selected.indices.push_back(pick);
    } else {
      state.selected.indices.push_back(pick);
      refit(problem, state.selected.indices, state.coefficients, state.residual);
    }
    state.unselected_colsum -= A.col(pick);
    state.iter = k;
    state.best_residual_norm = state.residual.norm();
    if (observer) observer(state);
  }
  return state.selected;
}

// CoSaMP / SP skeleton: pick L by score over all of [N], merge, fit, prune to
// K by magnitude, optionally refit, and keep the smallest-residual support.
template <class ScoreFn>
SupportEstimate iterative(const RecoveryProblem& problem, ScoreFn&& score, int L, bool second_fit, int max_iters,
                          const IterationObserver& observer) {
  const Matrix& A = problem.A();
  const int K = problem.K();
  const Vector colsum_all = A.rowwise().sum();

  SolverState state;
  state.residual = problem.y();
  state.unselected_colsum = colsum_all;
  double prev_norm = problem.y().norm();

  SupportEstimate best;
  double best_norm = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= max_iters; ++it) {
    const int k = std::min(static_cast<int>(state.selected.size()) + 1, K);
    const Vector scores = score(state, k);
    IndexList merged = top_indices(scores, L);
    merged.insert(merged.end(), state.selected.indices.begin(), state.selected.indices.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    const Vector b = least_squares(gather_columns(A, merged), problem.y());
    Vector magnitude = b.cwiseAbs();
    IndexList keep_pos = top_indices(magnitude, K);
    // top_indices skips -inf only; all magnitudes are finite so |keep_pos| = K
    std::sort(keep_pos.begin(), keep_pos.end());
    IndexList pruned;
    Vector coef(static_cast<Index>(keep_pos.size()));
    for (std::size_t i = 0; i < keep_pos.size(); ++i) {
      pruned.push_back(merged[static_cast<std::size_t>(keep_pos[i])]);
      coef[static_cast<Index>(i)] = b[keep_pos[i]];
    }

    Vector residual;
    if (second_fit) {
      refit(problem, pruned, coef, residual);
    } else {
      residual = problem.y() - reconstruct(A, pruned, coef);
    }
    const double norm = residual.norm();
    const bool repeated = SupportEstimate(pruned).sorted() == state.selected.sorted();

    if (norm < best_norm) {
      best_norm = norm;
      best = SupportEstimate(pruned);
    }
    state.selected = SupportEstimate(pruned);
    state.coefficients = coef;
    state.residual = std::move(residual);
    state.unselected_colsum = unselected_column_sum(A, pruned);
    state.iter = it;
    state.best_residual_norm = best_norm;
    if (observer) observer(state);

    if (repeated || norm >= (1.0 - kStallTolerance) * prev_norm) break;
    prev_norm = norm;
  }
  return best;
}

int selection_size(const SolverConfig& cfg, int K) {
  return cfg.selection_size > 0 ? cfg.selection_size : default_selection_size(cfg.algorithm, K);
}

int max_iterations(const SolverConfig& cfg, int K) {
  return cfg.max_iters > 0 ? cfg.max_iters : default_max_iters(cfg.algorithm, K);
}

SupportEstimate b_iterative(const RecoveryProblem& problem, const SignalModel& model, const SolverConfig& cfg,
                            bool second_fit, const IterationObserver& observer) {
  const auto setup = make_proxy(problem, model, cfg);
  auto score = [&](const SolverState& s, int k) {
    return bmap_scores_all(problem.A(), s.residual, s.unselected_colsum, k, setup.params, setup.two_sided, cfg.exec);
  };
  return iterative(problem, score, selection_size(cfg, problem.K()), second_fit, max_iterations(cfg, problem.K()),
                   observer);
}

SupportEstimate omp_iterative(const RecoveryProblem& problem, const SolverConfig& cfg, bool second_fit,
                              const IterationObserver& observer) {
  auto score = [&](const SolverState& s, int) { return omp_scores(problem.A(), s.residual, cfg.exec); };
  return iterative(problem, score, selection_size(cfg, problem.K()), second_fit, max_iterations(cfg, problem.K()),
                   observer);
}

}  // namespace

SupportEstimate bmap_greedy(const RecoveryProblem& problem, const SignalModel& model, const SolverConfig& cfg,
                            const IterationObserver& observer) {
  require(cfg.algorithm, Algorithm::BMAP);
  const auto setup = make_proxy(problem, model, cfg);
  const ResidualMode mode = cfg.residual_mode.value_or(
      model.kind() == SignalKind::Constant ? ResidualMode::FixedBeta : ResidualMode::LeastSquares);
  auto score = [&](const SolverState& s, int k) {
    return bmap_scores_all(problem.A(), s.residual, s.unselected_colsum, k, setup.params, setup.two_sided, cfg.exec);
  };
  return greedy(problem, score, mode, setup.params.beta_star, setup.two_sided, observer);
}

SupportEstimate b_cosamp(const RecoveryProblem& problem, const SignalModel& model, const SolverConfig& cfg,
                         const IterationObserver& observer) {
  require(cfg.algorithm, Algorithm::BCoSaMP);
  return b_iterative(problem, model, cfg, false, observer);
}

SupportEstimate b_sp(const RecoveryProblem& problem, const SignalModel& model, const SolverConfig& cfg,
                     const IterationObserver& observer) {
  require(cfg.algorithm, Algorithm::BSP);
  return b_iterative(problem, model, cfg, true, observer);
}

SupportEstimate omp(const RecoveryProblem& problem, const SolverConfig& cfg, const IterationObserver& observer) {
  require(cfg.algorithm, Algorithm::OMP);
  auto score = [&](const SolverState& s, int) { return omp_scores(problem.A(), s.residual, cfg.exec); };
  return greedy(problem, score, ResidualMode::LeastSquares, 1.0, false, observer);
}

SupportEstimate cosamp(const RecoveryProblem& problem, const SolverConfig& cfg, const IterationObserver& observer) {
  require(cfg.algorithm, Algorithm::CoSaMP);
  return omp_iterative(problem, cfg, false, observer);
}

SupportEstimate sp(const RecoveryProblem& problem, const SolverConfig& cfg, const IterationObserver& observer) {
  require(cfg.algorithm, Algorithm::SP);
  return omp_iterative(problem, cfg, true, observer);
}

SupportEstimate solve(const RecoveryProblem& problem, const SignalModel& model, const SolverConfig& cfg,
                      const IterationObserver& observer) {
  switch (cfg.algorithm) {
    case Algorithm::BMAP: return bmap_greedy(problem, model, cfg, observer);
    case Algorithm::BCoSaMP: return b_cosamp(problem, model, cfg, observer);
    case Algorithm::BSP: return b_sp(problem, model, cfg, observer);
    case Algorithm::OMP: return omp(problem, cfg, observer);
    case Algorithm::CoSaMP: return cosamp(problem, cfg, observer);
    case Algorithm::SP: return sp(problem, cfg, observer);
  }
  throw std::logic_error("unreachable");
}

}  // namespace bmap
