#include <benchmark/benchmark.h>

#include "feynkac/fracweights.hpp"
#include "feynkac/harness.hpp"
#include "feynkac/oracle.hpp"
#include "feynkac/stepper.hpp"
#include "feynkac/substantial.hpp"

using namespace feynkac;

static void BM_FsdWeights(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsd_weights(0.5, -0.5, n));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FsdWeights)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

static void BM_BuildFactors2D(benchmark::State& state) {
  const Mesh mesh = build_mesh(2, 64);
  Eigen::VectorXd u = Eigen::VectorXd::Ones(mesh.n_free());
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_factors({-1.0, 1.0}, u, 0.0125, 80));
  }
}
BENCHMARK(BM_BuildFactors2D);

static void BM_MittagLeffler(benchmark::State& state) {
  const MLParams params{0.5};
  mittag_leffler(params, -7.0);  // warm the gamma cache
  for (auto _ : state) {
    benchmark::DoNotOptimize(mittag_leffler(params, {-7.0, 0.0}));
  }
}
BENCHMARK(BM_MittagLeffler);

static void BM_Solve1D(benchmark::State& state) {
  const int n_steps = static_cast<int>(state.range(0));
  const TableCell cell = table_configs(1, 128)[1];  // alpha = 0.5
  const FemSystem sys = assemble(build_mesh(1, 128));
  const Problem problem = make_problem(cell.config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(problem, sys, 1.0 / n_steps));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Solve1D)->RangeMultiplier(2)->Range(20, 160)->Complexity();

static void BM_Solve2D(benchmark::State& state) {
  const TableCell cell = table_configs(7, 32)[0];
  const FemSystem sys = assemble(build_mesh(2, 32));
  const Problem problem = make_problem(cell.config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(problem, sys, 0.025));
  }
}
BENCHMARK(BM_Solve2D);

BENCHMARK_MAIN();
