// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include "genein/search.hpp"

using namespace genein;

namespace {

const Grid& scan_grid() {
  static const Grid g{{"alpha", {-2, -1, -0.5, 0.25, 0.5, 1, 1.5, 2}}, {"a", {-2, -1, -0.5, 0.5, 1, 2}}};
  return g;
}

void BM_scan_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(residual_scan("aa.4d.iii", scan_grid()));
}

void BM_scan_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(residual_scan_serial("aa.4d.iii", scan_grid()));
}

void BM_falsify_parallel(benchmark::State& st) {
  const LieAlgebra g = table_entry("A48").algebra;
  for (auto _ : st) benchmark::DoNotOptimize(random_falsification(g, {3, 1}, st.range(0), 20261015));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_falsify_serial(benchmark::State& st) {
  const LieAlgebra g = table_entry("A48").algebra;
  for (auto _ : st) benchmark::DoNotOptimize(random_falsification_serial(g, {3, 1}, st.range(0), 20261015));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_scan_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_scan_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_falsify_parallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_falsify_serial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
