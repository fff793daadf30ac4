#include "e2vem/assembly.hpp"
#include "e2vem/degree.hpp"
#include "e2vem/meshgen.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace e2vem;

PolygonalMesh honeycomb(int level) { return make_mesh({MeshFamily::Honeycomb, level, 0}); }

void BM_AssignDegreesCached(benchmark::State& state) {
  const PolygonalMesh mesh = honeycomb(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    DegreeCache cache;
    benchmark::DoNotOptimize(assign_degrees(mesh, {}, &cache));
  }
  state.counters["cells"] = static_cast<double>(mesh.num_cells());
}
BENCHMARK(BM_AssignDegreesCached)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const PolygonalMesh mesh = honeycomb(static_cast<int>(state.range(0)));
  const DegreeAssignment degrees = assign_degrees(mesh, {});
  const ProblemSpec problem = sine_problem(ProblemKind::Poisson);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(mesh, degrees, problem));
  state.counters["cells"] = static_cast<double>(mesh.num_cells());
}
BENCHMARK(BM_Assemble)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const PolygonalMesh mesh = honeycomb(2);
  const LinearSystem system = assemble(mesh, assign_degrees(mesh, {}), sine_problem(ProblemKind::Poisson));
  const SolverOptions options{static_cast<SolverKind>(state.range(0)), 1e-10, 0};
  for (auto _ : state) benchmark::DoNotOptimize(solve(system, options));
  state.SetLabel(to_string(options.kind));
  state.counters["dofs"] = static_cast<double>(system.num_dofs());
}
BENCHMARK(BM_Solve)
    ->Arg(static_cast<int>(SolverKind::Cholesky))
    ->Arg(static_cast<int>(SolverKind::CG))
    ->Unit(benchmark::kMillisecond);

}  // namespace
