#include "e2vem/degree.hpp"
#include "e2vem/meshgen.hpp"
#include "e2vem/projectors.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace e2vem;

// Local stiffness of a regular n-gon at its minimal admissible degree.
void BM_LocalStiffnessRegular(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Polygon poly = make_polygon(RegularSpec{n});
  const int l = min_admissible_l(poly).l;
  for (auto _ : state) benchmark::DoNotOptimize(local_stiffness(poly, l));
  state.counters["l"] = l;
}
BENCHMARK(BM_LocalStiffnessRegular)->Arg(4)->Arg(6)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_LocalStiffnessFixedDegree(benchmark::State& state) {
  const Polygon poly = make_polygon(RegularSpec{6});
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(local_stiffness(poly, l));
}
BENCHMARK(BM_LocalStiffnessFixedDegree)->DenseRange(0, 6);

void BM_MinimalDegreeSearch(benchmark::State& state) {
  const Polygon poly = make_polygon(RegularSpec{static_cast<int>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(min_admissible_l(poly));
}
BENCHMARK(BM_MinimalDegreeSearch)->Arg(6)->Arg(12)->Arg(20);

void BM_BadPolynomialDimension(benchmark::State& state) {
  const Polygon poly = make_polygon(RegularSpec{12});
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dim_badpoly(poly, l));
}
BENCHMARK(BM_BadPolynomialDimension)->DenseRange(1, 5);

}  // namespace
