// Serial reference vs OpenMP kernels, and a small sweep at several thread counts.

#include "bmap/harness.hpp"
#include "bmap/kernels.hpp"
#include "bmap/proxy.hpp"

#include <benchmark/benchmark.h>

using namespace bmap;

namespace {

struct KernelInput {
  Matrix A;
  Vector r, colsum;
  ProxyParams params;
};

KernelInput make_input(Index M, Index N) {
  Rng rng(1, 0);
  Matrix A = generate_matrix(MatrixEnsemble::GaussianInvM, M, N, rng);
  Vector r = Vector::NullaryExpr(M, [&] { return rng.normal(); });
  Vector colsum = A.rowwise().sum();
  return {std::move(A), std::move(r), std::move(colsum), ProxyParams(1.0, 0.01, Vector::Constant(N, 0.5), 8, N)};
}

void BM_ProxyKernel(benchmark::State& state, Exec exec) {
  const auto in = make_input(state.range(0) / 4, state.range(0));
  const auto c = proxy_coefficients(1, in.params, 1.0, false);
  Vector out;
  for (auto _ : state) {
    kernels::bmap_scores(exec, in.A, in.r, in.colsum, in.params.log_odds(), c, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Correlation(benchmark::State& state, Exec exec) {
  const auto in = make_input(state.range(0) / 4, state.range(0));
  Vector out;
  for (auto _ : state) {
    kernels::abs_correlation(exec, in.A, in.r, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Sweep(benchmark::State& state) {
  SweepSpec spec;
  spec.N = 128;
  spec.M = 32;
  spec.K_values = {4, 8};
  spec.trials = 50;
  for (auto a : {Algorithm::BMAP, Algorithm::OMP}) {
    SolverConfig c;
    c.algorithm = a;
    spec.algorithms.push_back({std::string(to_string(a)), c});
  }
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = threads == 0 ? run_sweep_serial(spec) : run_sweep(spec, threads);
    benchmark::DoNotOptimize(r.rows.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_ProxyKernel, serial, Exec::Serial)->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK_CAPTURE(BM_ProxyKernel, parallel, Exec::Parallel)->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK_CAPTURE(BM_Correlation, serial, Exec::Serial)->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK_CAPTURE(BM_Correlation, parallel, Exec::Parallel)->RangeMultiplier(4)->Range(256, 16384);
// 0 = serial reference
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
