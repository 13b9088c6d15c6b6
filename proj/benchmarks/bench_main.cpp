#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "specapprox/approximation.hpp"
#include "specapprox/classification.hpp"
#include "specapprox/elliptic_cube.hpp"
#include "specapprox/experiment.hpp"

using namespace specapprox;

static void BM_TauGevrey(benchmark::State& state) {
  const auto m = GrowthSequence::gevrey(0.5);
  const double lambda = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tau_eval(m, lambda));
}
BENCHMARK(BM_TauGevrey)->Arg(10)->Arg(100)->Arg(400);

static void BM_CubeSpectrum(benchmark::State& state) {
  const CubeOperator op{.q = static_cast<int>(state.range(0)), .a = std::numbers::pi,
                        .n_per_axis = static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(cube_spectrum(op));
}
BENCHMARK(BM_CubeSpectrum)->Args({2, 64})->Args({3, 32})->Unit(benchmark::kMillisecond);

static void BM_FdOracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto grid = uniform_grid(std::numbers::pi, n);
  std::vector<double> u0;
  for (double x : grid) u0.push_back(std::sin(x));
  for (auto _ : state) benchmark::DoNotOptimize(fd_oracle_1d(std::numbers::pi, u0, 0.1, n, 1e-4));
}
BENCHMARK(BM_FdOracle)->Arg(401)->Arg(1601)->Unit(benchmark::kMillisecond);

static void BM_JacksonSuite(benchmark::State& state) {
  const VerifySettings settings;
  std::vector<SpectralVector> vectors;
  for (std::size_t i = 0; i < settings.vectors; ++i) vectors.push_back(random_instance(settings, 42, i));
  std::vector<double> r_grid;
  for (int i = 0; i < 20; ++i) r_grid.push_back(0.1 * std::pow(2000.0, i / 19.0));
  for (auto _ : state) {
    std::size_t held = 0;
    for (const auto& f : vectors)
      for (unsigned k : {1u, 2u, 3u})
        for (double r : r_grid) held += jackson_check(f, k, r).holds;
    benchmark::DoNotOptimize(held);
  }
}
BENCHMARK(BM_JacksonSuite)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
