#include <benchmark/benchmark.h>

#include "conedet/special_functions.hpp"

using namespace conedet;

static void BM_dedekind_eta(benchmark::State& state) {
  const Modulus m(cplx(0.31, 0.12));  // forces a reduction walk
  for (auto _ : state) benchmark::DoNotOptimize(dedekind_eta(m));
}
BENCHMARK(BM_dedekind_eta);

static void BM_theta1(benchmark::State& state) {
  const Modulus m(cplx(0.1, 1.2));
  const cplx z(0.37, 0.21);
  for (auto _ : state) benchmark::DoNotOptimize(theta1(z, m));
}
BENCHMARK(BM_theta1);

static void BM_theta1_prime0(benchmark::State& state) {
  const Modulus m(cplx(0.1, 1.2));
  for (auto _ : state) benchmark::DoNotOptimize(theta1_prime0(m));
}
BENCHMARK(BM_theta1_prime0);
