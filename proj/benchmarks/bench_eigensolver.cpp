#include <benchmark/benchmark.h>

#include "conedet/eigensolver.hpp"
#include "conedet/fem.hpp"
#include "conedet/mesh.hpp"
#include "conedet/surface.hpp"

using namespace conedet;

static void BM_eigen_dense(benchmark::State& state) {
  const PolyhedralSurface torus = build_flat_torus(cplx(0, 1), 8);
  const MeshLevel mesh = MeshLevel::base_level(torus, {}).refine(2);  // 1024 dofs
  const DiscreteOperatorPair pair = assemble(mesh);
  EigenOptions opts;
  opts.dense_threshold = 1 << 20;
  for (auto _ : state)
    benchmark::DoNotOptimize(eigenvalues(pair, static_cast<int>(state.range(0)), opts));
}
BENCHMARK(BM_eigen_dense)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_eigen_lanczos(benchmark::State& state) {
  const PolyhedralSurface torus = build_flat_torus(cplx(0, 1), 8);
  const MeshLevel mesh = MeshLevel::base_level(torus, {}).refine(3);  // 4096 dofs
  const DiscreteOperatorPair pair = assemble(mesh);
  EigenOptions opts;
  opts.dense_threshold = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(eigenvalues(pair, static_cast<int>(state.range(0)), opts));
}
BENCHMARK(BM_eigen_lanczos)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
