#include <benchmark/benchmark.h>

#include "locext/families.hpp"
#include "locext/numlab.hpp"

using namespace locext;

static void BM_EigHermitian(benchmark::State& st) {
  const auto a = num::random_hermitian(static_cast<std::size_t>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(num::eig_hermitian(a).values(0));
}
BENCHMARK(BM_EigHermitian)->Arg(9)->Arg(16)->Arg(32)->Arg(64);

static void BM_GaussNewton(benchmark::State& st) {
  std::uint64_t seed = 1;
  for (auto _ : st) benchmark::DoNotOptimize(num::gauss_newton_run(3, 3, 4, 4, seed++).converged);
}
BENCHMARK(BM_GaussNewton)->Unit(benchmark::kMillisecond);

static void BM_NumericExtension(benchmark::State& st) {
  const auto f = num::to_float(rho_3x3());
  for (auto _ : st) benchmark::DoNotOptimize(num::numeric_extension_dimension(f));
}
BENCHMARK(BM_NumericExtension)->Unit(benchmark::kMillisecond);
