#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dirode/dirode.hpp"

using namespace dirode;

namespace {

void BM_ClosedFormUpdate(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const double dt = 0.01;
  NeighborPolynomial p;
  p.order = order;
  p.dt = dt;
  for (int k = 0; k <= order; ++k) p.a[k] = 1.0 / std::pow(dt, k);
  const DiffusionUpdateParams prm{50.0, 0.1, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_update(prm, p, 1.0, dt));
}
BENCHMARK(BM_ClosedFormUpdate)->DenseRange(0, 3);

void BM_PredictorCorrector1D(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const Field1D f = sample_function(build_grid_1d(1.0, 201), [](double x) { return std::sin(std::numbers::pi * x); });
  const SchemeConfig cfg{order, Sampling::uniform, 20, 1e-10};
  for (auto _ : state)
    benchmark::DoNotOptimize(predictor_corrector_step(f, DiffusionModel::constant(1.0), {}, cfg, 0.0, 1e-3));
}
BENCHMARK(BM_PredictorCorrector1D)->DenseRange(0, 2);

void BM_PredictorCorrector2D(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Field2D f = sample_function(build_grid_2d(1.0, 1.0, n, n),
                                    [](double x, double y) { return std::sin(std::numbers::pi * x) * std::sin(std::numbers::pi * y); });
  const SchemeConfig cfg{0, Sampling::uniform, 0, 0.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(predictor_corrector_step(f, DiffusionModel::constant(1.0), {}, cfg, 0.0, 1e-3));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n));
}
BENCHMARK(BM_PredictorCorrector2D)->Arg(64)->Arg(200);

void BM_Tdma(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  TridiagonalSystem sys(n);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    sys.diag[i] = 3.0 + uni(rng);
    sys.rhs[i] = uni(rng);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    sys.sub[i] = uni(rng);
    sys.super[i] = uni(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(tdma_solve(sys));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_Tdma)->RangeMultiplier(8)->Range(64, 32768);

void BM_Remap2D(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto method = static_cast<Interpolation>(state.range(1));
  const Field2D f = sample_function(build_grid_2d(1.0, 1.0, n, n),
                                    [](double x, double y) { return std::exp(-20 * ((x - 0.5) * (x - 0.5) + y * y)); });
  const VelocityField2D vel{[](double, double y, double, double) { return y - 0.5; },
                            [](double x, double, double, double) { return 0.5 - x; }};
  const FootMap2D feet = trace_feet_sadm(f, vel, 0.0, 0.01, 2);
  for (auto _ : state) benchmark::DoNotOptimize(remap(f, feet, method));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n));
}
BENCHMARK(BM_Remap2D)->Args({200, 0})->Args({200, 1});

void BM_SadmField2D(benchmark::State& state) {
  const Field2D f = sample_function(build_grid_2d(1.0, 1.0, 200, 200), [](double x, double y) { return 0.01 * (1 + x * y); });
  for (auto _ : state) benchmark::DoNotOptimize(sadm_field_step(f, 1e-3, 750.0, {}, 0.0, 0.01, 3));
}
BENCHMARK(BM_SadmField2D);

}  // namespace

BENCHMARK_MAIN();
