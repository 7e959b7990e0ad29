#include "bmap/config.hpp"

#include <fstream>

namespace bmap {

using nlohmann::json;

namespace {

NonzeroDistribution parse_law(const json& j) {
  const auto law = j.at("law").get<std::string>();
  if (law == "uniform") return NonzeroDistribution::uniform(j.at("lo").get<double>(), j.at("hi").get<double>());
  if (law == "normal") return NonzeroDistribution::normal(j.at("mean").get<double>(), j.at("stddev").get<double>());
  throw ConfigError("unknown law '" + law + "'");
}

json law_json(const NonzeroDistribution& d) {
  if (const auto* u = std::get_if<UniformLaw>(&d.law())) return {{"law", "uniform"}, {"lo", u->lo}, {"hi", u->hi}};
  const auto& n = std::get<NormalLaw>(d.law());
  return {{"law", "normal"}, {"mean", n.mean}, {"stddev", n.stddev}};
}

ResidualMode parse_residual_mode(const std::string& s) {
  if (s == "FixedBeta") return ResidualMode::FixedBeta;
  if (s == "LeastSquares") return ResidualMode::LeastSquares;
  throw ConfigError("unknown residual_mode '" + s + "'");
}

SweepAlgorithm parse_algorithm_entry(const json& j) {
  SweepAlgorithm a;
  a.config.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
  a.label = j.value("label", std::string(to_string(a.config.algorithm)));
  if (j.contains("residual_mode")) a.config.residual_mode = parse_residual_mode(j["residual_mode"].get<std::string>());
  if (j.contains("two_sided")) a.config.two_sided = j["two_sided"].get<bool>();
  a.config.max_iters = j.value("max_iters", 0);
  a.config.selection_size = j.value("selection_size", 0);
  a.config.beta_delta = j.value("beta_delta", kDefaultBetaDelta);
  return a;
}

}  // namespace

SignalModel parse_signal(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "constant") return SignalModel::constant(j.at("beta").get<double>());
  if (kind == "one_sided") return SignalModel::one_sided(parse_law(j.at("dist")));
  if (kind == "two_sided")
    return SignalModel::two_sided(j.at("p_positive").get<double>(), parse_law(j.at("positive")),
                                  parse_law(j.at("negative")));
  throw ConfigError("unknown signal kind '" + kind + "'");
}

json to_json(const SignalModel& model) {
  switch (model.kind()) {
    case SignalKind::Constant: return {{"kind", "constant"}, {"beta", std::get<ConstantSignal>(model.law()).beta}};
    case SignalKind::OneSided:
      return {{"kind", "one_sided"}, {"dist", law_json(std::get<OneSidedSignal>(model.law()).dist)}};
    case SignalKind::TwoSided: {
      const auto& t = std::get<TwoSidedSignal>(model.law());
      return {{"kind", "two_sided"},
              {"p_positive", t.p_positive},
              {"positive", law_json(t.positive)},
              {"negative", law_json(t.negative)}};
    }
  }
  return {};
}

SweepSpec parse_sweep_spec(const json& j) {
  try {
    SweepSpec s;
    s.N = j.at("N").get<Index>();
    s.M = j.at("M").get<Index>();
    s.K_values = j.at("K_values").get<std::vector<int>>();
    s.ensemble = parse_ensemble(j.at("ensemble").get<std::string>());
    s.signal = parse_signal(j.at("signal"));
    if (j.contains("snr_db") && !j["snr_db"].is_null()) s.snr_db = j["snr_db"].get<double>();
    for (const auto& a : j.at("algorithms")) s.algorithms.push_back(parse_algorithm_entry(a));
    s.trials = j.at("trials").get<int>();
    s.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("prior_mode")) {
      const auto& pm = j["prior_mode"];
      const auto kind = pm.at("kind").get<std::string>();
      if (kind == "Uniform") {
        s.prior_mode.kind = PriorMode::Kind::Uniform;
      } else if (kind == "SupportBoost") {
        s.prior_mode.kind = PriorMode::Kind::SupportBoost;
        s.prior_mode.p_hi = pm.value("p_hi", 0.55);
      } else {
        throw ConfigError("unknown prior_mode kind '" + kind + "'");
      }
    }
    s.validate();
    return s;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_sweep_spec(j);
}

json to_json(const SweepSpec& spec) {
  json algs = json::array();
  for (const auto& a : spec.algorithms) {
    json e = {{"algorithm", to_string(a.config.algorithm)}, {"label", a.label}};
    if (a.config.residual_mode)
      e["residual_mode"] = *a.config.residual_mode == ResidualMode::FixedBeta ? "FixedBeta" : "LeastSquares";
    if (a.config.two_sided) e["two_sided"] = *a.config.two_sided;
    if (a.config.max_iters > 0) e["max_iters"] = a.config.max_iters;
    if (a.config.selection_size > 0) e["selection_size"] = a.config.selection_size;
    e["beta_delta"] = a.config.beta_delta;
    algs.push_back(std::move(e));
  }
  json prior = spec.prior_mode.kind == PriorMode::Kind::Uniform
                   ? json{{"kind", "Uniform"}}
                   : json{{"kind", "SupportBoost"}, {"p_hi", spec.prior_mode.p_hi}};
  return {{"N", spec.N},
          {"M", spec.M},
          {"K_values", spec.K_values},
          {"ensemble", to_string(spec.ensemble)},
          {"signal", to_json(spec.signal)},
          {"snr_db", spec.snr_db ? json(*spec.snr_db) : json(nullptr)},
          {"algorithms", algs},
          {"trials", spec.trials},
          {"base_seed", spec.base_seed},
          {"prior_mode", prior}};
}

}  // namespace bmap
