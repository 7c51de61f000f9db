#include <benchmark/benchmark.h>

#include <numbers>

#include "conedet/cone_kernel.hpp"

using namespace conedet;

static void BM_kernel_images_only(benchmark::State& state) {
  // beta = 2 pi / 3: pure image sum, no contour quadrature
  const ConeParams params = ConeParams::for_angle(2.0 * std::numbers::pi / 3.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        heat_kernel_cone(params, 0.8, 0.4, 1.1, 1.3, 0.1));
}
BENCHMARK(BM_kernel_images_only);

static void BM_kernel_with_contour(benchmark::State& state) {
  const ConeParams params = ConeParams::for_angle(3.0 * std::numbers::pi);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        heat_kernel_cone(params, 0.8, 0.4, 1.1, 1.3, 0.1));
}
BENCHMARK(BM_kernel_with_contour);

static void BM_trace_defect(benchmark::State& state) {
  const ConeParams params = ConeParams::for_angle(3.0 * std::numbers::pi);
  for (auto _ : state)
    benchmark::DoNotOptimize(trace_defect_numeric(params, 1.0, 0.01));
}
BENCHMARK(BM_trace_defect);
