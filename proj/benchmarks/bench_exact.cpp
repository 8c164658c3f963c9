#include <benchmark/benchmark.h>

#include "locext/extension.hpp"
#include "locext/families.hpp"
#include "locext/linalg.hpp"

using namespace locext;

static void BM_PsdCheck(benchmark::State& st) {
  const auto f = rho_family({static_cast<std::size_t>(st.range(0))});
  const ExactMatrix pt = partial_transpose(f, Side::A);
  for (auto _ : st) benchmark::DoNotOptimize(psd_check(pt).psd);
  st.SetLabel(std::to_string(pt.rows()) + "x" + std::to_string(pt.rows()));
}
BENCHMARK(BM_PsdCheck)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ExtensionSpace(benchmark::State& st) {
  const auto core = rho_3x3();
  const auto route = st.range(0) == 0 ? ext::SolveRoute::Intersection : ext::SolveRoute::StackedNullSpace;
  for (auto _ : st) benchmark::DoNotOptimize(ext::ppt_extension_space(core, Side::A, route).dimension);
  st.SetLabel(st.range(0) == 0 ? "intersection" : "stacked");
}
BENCHMARK(BM_ExtensionSpace)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Pipeline(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(rho_4x5_pipeline().stages.size());
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond);
