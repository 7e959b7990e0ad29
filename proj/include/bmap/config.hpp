#pragma once

#include "bmap/harness.hpp"

#include <json.hpp>

#include <filesystem>

namespace bmap {

/// Sweep configs are JSON objects whose keys are the SweepSpec field names:
///
///   {
///     "N": 128, "M": 32, "K_values": [4, 8, 12, 16],
///     "ensemble": "Bernoulli01",
///     "signal": {"kind": "constant", "beta": 1.0},
///     "snr_db": null,
///     "algorithms": [{"algorithm": "BMAP"}, {"algorithm": "OMP"}],
///     "trials": 500, "base_seed": 7,
///     "prior_mode": {"kind": "Uniform"}
///   }
///
/// Signals: {"kind": "constant", "beta": b},
/// {"kind": "one_sided", "dist": LAW}, or
/// {"kind": "two_sided", "p_positive": p, "positive": LAW, "negative": LAW},
/// with LAW = {"law": "uniform", "lo": a, "hi": b} or
/// {"law": "normal", "mean": m, "stddev": s}.
/// Algorithm entries accept optional "label", "residual_mode"
/// ("FixedBeta" | "LeastSquares"), "two_sided", "max_iters", "selection_size",
/// "beta_delta". prior_mode is {"kind": "Uniform"} or
/// {"kind": "SupportBoost", "p_hi": 0.55}.
SweepSpec parse_sweep_spec(const nlohmann::json& j);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

nlohmann::json to_json(const SweepSpec& spec);
nlohmann::json to_json(const SignalModel& model);
SignalModel parse_signal(const nlohmann::json& j);

/// Thrown for malformed or invalid configuration files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bmap
