#include <benchmark/benchmark.h>

#include "conedet/fem.hpp"
#include "conedet/mesh.hpp"
#include "conedet/surface.hpp"
#include "conedet/torus_metric.hpp"

using namespace conedet;

static void BM_assemble_plain(benchmark::State& state) {
  const PolyhedralSurface torus = build_flat_torus(cplx(0, 1), 8);
  const MeshLevel mesh =
      MeshLevel::base_level(torus, {}).refine(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(mesh));
  state.SetLabel(std::to_string(mesh.num_vertices()) + " dofs");
}
BENCHMARK(BM_assemble_plain)->Arg(2)->Arg(3)->Arg(4);

static void BM_assemble_density(benchmark::State& state) {
  const ConicalTorusMetric metric(Modulus(cplx(0, 1)), 1.0,
                                  {{0.25, 0.25, 0.5}, {0.70, 0.60, -0.5}});
  const MarkedTorus marked =
      build_flat_torus_marked(cplx(0, 1), 8, {metric.point(0), metric.point(1)});
  GradingMap grading{{marked.marked_classes[0], 2.0}, {marked.marked_classes[1], 2.0}};
  const MeshLevel mesh = MeshLevel::base_level(marked.surface, grading)
                             .refine(static_cast<int>(state.range(0)));
  DensityField density;
  density.rho = [&metric](const Vec2& x) {
    return metric.density(cplx(x.x(), x.y()));
  };
  density.singular = {{marked.marked_classes[0], 0.5},
                      {marked.marked_classes[1], -0.5}};
  for (auto _ : state) benchmark::DoNotOptimize(assemble(mesh, density));
  state.SetLabel(std::to_string(mesh.num_vertices()) + " dofs");
}
BENCHMARK(BM_assemble_density)->Arg(2)->Arg(3);
