// bmap: Monte Carlo sweeps, oracle self-checks and single traced trials.
//
//   bmap sweep --config sweep.json --out results/ [--threads 4] [--format csv,json,svg]
//   bmap verify
//   bmap single --N 128 --M 32 --K 8 --alg BMAP --seed 1
//
// Exit codes: 0 ok, 1 config error, 2 runtime failure, 3 verify failure.

#include "bmap/config.hpp"
#include "bmap/harness.hpp"
#include "bmap/oracle.hpp"
#include "bmap/proxy.hpp"
#include "bmap/results_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

using namespace bmap;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitVerify = 3;

std::string join(const IndexList& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? " " : "") + std::to_string(idx[i]);
  return s;
}

int cmd_sweep(const std::string& config, const std::string& out, int threads, const std::string& formats) {
  SweepSpec spec;
  std::vector<OutputFormat> fmts;
  try {
    spec = load_sweep_spec(config);
    fmts = parse_formats(formats);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    const SweepResult result = run_sweep(spec, threads);
    for (const auto& p : emit_results(result, fmts, out)) std::cout << "wrote " << p.string() << '\n';
    std::printf("%zu rows in %.2f s\n", result.rows.size(), result.wall_clock);
  } catch (const std::exception& e) {
    std::cerr << "sweep failed: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}

// Identity and inequality checks between the proxy and the enumeration
// oracle on small seeded instances.
int cmd_verify() {
  int failures = 0;
  auto report = [&](bool ok, const char* name, double value) {
    std::printf("%s  %-40s %.3g\n", ok ? "ok  " : "FAIL", name, value);
    if (!ok) ++failures;
  };

  double diff_err = 0.0, jensen_slack = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed, 0xbeef);
    const Index N = 12, M = 6;
    const int K = 3;
    const double beta = 1.0, s2 = 0.3;
    const Matrix A = generate_matrix(MatrixEnsemble::GaussianInvM, M, N, rng);
    const GroundTruth truth(sample_support(N, K, Vector{}, rng), std::vector<double>(K, beta), N);
    Vector priors(N);
    for (Index j = 0; j < N; ++j) priors[j] = rng.uniform(0.2, 0.8);
    const RecoveryProblem prob(A, measure(A, truth, s2, rng), K, s2, priors);
    const auto model = SignalModel::constant(beta);
    const auto params = make_proxy_params(prob, beta);

    for (int k = 1; k <= K; ++k) {
      const SupportEstimate given(IndexList(truth.support.begin(), truth.support.begin() + (k - 1)));
      Vector r = prob.y();
      for (Index j : given.indices) r -= beta * A.col(j);
      const Vector s = bmap_scores(A, r, given, k, params);
      Index ref = -1;
      double ref_bound = 0.0;
      for (Index i = 0; i < N; ++i) {
        if (given.contains(i)) continue;
        const auto b = theorem1_bound(prob, model, given, i, true);
        if (ref < 0) ref = i, ref_bound = b.total;
        const double db = b.total - ref_bound, ds = s[i] - s[ref];
        diff_err = std::max(diff_err, std::abs(db - ds) / std::max(1.0, std::abs(db)));
        jensen_slack = std::min(jensen_slack,
                                exact_log_bitwise_posterior(prob, model, given, i) + b.constants->C1 - b.total);
      }
    }
  }
  report(diff_err <= 1e-9, "proxy differences = bound differences", diff_err);
  report(jensen_slack >= -1e-8, "log posterior + C1 >= bound", jensen_slack);

  bool mono = true;
  for (Index N : {64, 256})
    for (int K : {1, 4})
      for (double s2 : {0.0, 0.01}) {
        double prev = -1.0;
        for (Index M = 4; M <= 1024; M *= 2) {
          const double p = success_prob_lower_bound(M, N, K, s2);
          mono = mono && p >= prev && p <= 1.0 && success_prob_lower_bound_relaxed(M, N, K, s2) <= p;
          prev = p;
        }
      }
  report(mono, "success bound monotone, <= 1, >= relaxed", mono ? 1.0 : 0.0);

  const double kl = kl_bernoulli(1.0 / 3.0, 0.5);
  report(std::abs(kl - 0.0566330) < 1e-6, "KL(1/3 || 1/2)", kl);
  const double q = normal_quantile(0.001);
  report(std::abs(q + 3.090232306167813) < 1e-9, "normal quantile at 0.001", q);

  std::printf("%s\n", failures ? "verify FAILED" : "verify passed");
  return failures ? kExitVerify : 0;
}

struct SingleArgs {
  Index N = 128, M = 32;
  int K = 8;
  std::string alg = "BMAP";
  std::uint64_t seed = 1;
  std::string ensemble = "GaussianInvM";
  std::optional<double> snr_db;
  std::string signal = "binary";
  std::string residual;
};

int cmd_single(const SingleArgs& a) {
  SweepSpec spec;
  try {
    spec.N = a.N;
    spec.M = a.M;
    spec.K_values = {a.K};
    spec.ensemble = parse_ensemble(a.ensemble);
    if (a.signal == "unif") spec.signal = SignalModel::one_sided(NonzeroDistribution::uniform(0.5, 1.5));
    else if (a.signal != "binary") throw std::invalid_argument("signal must be binary or unif");
    spec.snr_db = a.snr_db;
    spec.trials = 1;
    spec.base_seed = a.seed;
    SolverConfig cfg;
    cfg.algorithm = parse_algorithm(a.alg);
    if (a.residual == "fixed") cfg.residual_mode = ResidualMode::FixedBeta;
    else if (a.residual == "ls") cfg.residual_mode = ResidualMode::LeastSquares;
    else if (!a.residual.empty()) throw std::invalid_argument("residual must be fixed or ls");
    spec.algorithms = {{a.alg, cfg}};
    spec.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    const TrialInstance inst = draw_trial(spec, a.K, 0);
    std::printf("N=%ld M=%ld K=%d ensemble=%s sigma2=%.6g seed=%llu\n", static_cast<long>(a.N),
                static_cast<long>(a.M), a.K, a.ensemble.c_str(), inst.problem.sigma2(),
                static_cast<unsigned long long>(a.seed));
    std::printf("truth: %s\n", join(inst.truth.support).c_str());
    const auto out = run_trial_detailed(spec, a.K, spec.algorithms[0], 0, [](const SolverState& s) {
      std::printf("iter %2d  |r| = %-12.6g support: %s\n", s.iter, s.residual.norm(), join(s.selected.indices).c_str());
    });
    std::printf("estimate: %s\n%s\n", join(out.estimate.sorted()).c_str(), out.success ? "exact recovery" : "miss");
  } catch (const std::exception& e) {
    std::cerr << "trial failed: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian support recovery: sweeps, oracle checks and traced trials"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config, out, formats = "csv";
  int threads = 0;
  auto* sweep = app.add_subcommand("sweep", "run a Monte Carlo sweep from a JSON config");
  sweep->add_option("--config", config, "sweep config (JSON)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out, "output directory")->required();
  sweep->add_option("--threads", threads, "worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  sweep->add_option("--format", formats, "comma-separated: csv,json,svg");

  auto* verify = app.add_subcommand("verify", "check the proxy against the enumeration oracle");

  SingleArgs sa;
  auto* single = app.add_subcommand("single", "run one trial with a per-iteration trace");
  single->add_option("--N", sa.N, "columns")->required();
  single->add_option("--M", sa.M, "measurements")->required();
  single->add_option("--K", sa.K, "sparsity")->required();
  single->add_option("--alg", sa.alg, "BMAP, BCoSaMP, BSP, OMP, CoSaMP or SP")->required();
  single->add_option("--seed", sa.seed, "base seed")->required();
  single->add_option("--ensemble", sa.ensemble, "GaussianInvM, Uniform01, UniformSym or Bernoulli01");
  single->add_option("--snr-db", sa.snr_db, "noise level; omit for noise-free");
  single->add_option("--signal", sa.signal, "binary or unif (amplitudes in [0.5, 1.5])");
  single->add_option("--residual", sa.residual, "fixed or ls");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (*sweep) return cmd_sweep(config, out, threads, formats);
  if (*verify) return cmd_verify();
  if (*single) return cmd_single(sa);
  return kExitConfig;
}
