#include "twoscale/coupled.hpp"
#include "twoscale/micro.hpp"

#include <benchmark/benchmark.h>

using namespace twoscale;

namespace {

void BM_UnitCellCompute(benchmark::State& state) {
  const UnitCellSolver uc({1, 1, 30, 0.05}, static_cast<double>(state.range(0)));
  const auto e = isotropic_plane_stress(1, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(uc.compute(e, Mat2::Identity()));
  state.counters["dofs"] = uc.space().num_dofs();
}
BENCHMARK(BM_UnitCellCompute)->Arg(12)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_MicroSolve(benchmark::State& state) {
  ModelParams p;
  p.Nx = static_cast<int>(state.range(0));
  const MicroModel m(p);
  const std::vector<Mat2> fg(m.num_regions(), Mat2::Identity());
  for (auto _ : state) benchmark::DoNotOptimize(m.solve(fg));
  state.counters["dofs"] = m.space().num_dofs();
}
BENCHMARK(BM_MicroSolve)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_CoupledStep(benchmark::State& state) {
  ModelParams p;
  p.t_max = 0;
  const CoupledModel c(p);
  for (auto _ : state) benchmark::DoNotOptimize(run_coupled(c));
}
BENCHMARK(BM_CoupledStep)->Unit(benchmark::kMillisecond);

void BM_MeshTissue(benchmark::State& state) {
  ModelParams p;
  const TissueDomain t = build_tissue(p.layout());
  const double epu = p.edges_per_wall / (p.l2.lo * t.layout.scale());
  for (auto _ : state) benchmark::DoNotOptimize(triangulate(t, epu));
}
BENCHMARK(BM_MeshTissue)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
