#include <benchmark/benchmark.h>

#include "locext/families.hpp"
#include "locext/groebner.hpp"
#include "locext/range_matrix.hpp"

using namespace locext;

static void BM_Buchberger4x5(benchmark::State& st) {
  const auto m = alg::range_coordinate_matrix(rho_4x5());
  const auto gens = alg::minor_ideal(m, 3).generators;
  alg::GroebnerOptions o;
  o.record_trace = st.range(0) != 0;
  std::size_t size = 0;
  for (auto _ : st) size = alg::buchberger(gens, o).polys.size();
  st.counters["basis"] = static_cast<double>(size);
  st.SetLabel(o.record_trace ? "with trace" : "no trace");
}
BENCHMARK(BM_Buchberger4x5)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_BuchbergerFamily(benchmark::State& st) {
  const std::size_t k = static_cast<std::size_t>(st.range(0));
  const auto f = rho_family({k});
  const auto m = alg::decomposition_coordinate_matrix(f, true);
  std::vector<std::string> ex;
  for (std::size_t i = 1; i <= 2 * k - 2; ++i) ex.push_back("d_" + std::to_string(i));
  const auto gens = alg::minor_ideal(m, k, ex).generators;
  for (auto _ : st) benchmark::DoNotOptimize(alg::buchberger(gens).polys.size());
}
BENCHMARK(BM_BuchbergerFamily)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_NormalForm(benchmark::State& st) {
  const auto m = alg::range_coordinate_matrix(rho_4x5());
  const auto gb = alg::buchberger(alg::minor_ideal(m, 3).generators);
  const auto target = m.ring.var("psi00").pow(4);
  for (auto _ : st) benchmark::DoNotOptimize(alg::normal_form(target, gb.polys).is_zero());
}
BENCHMARK(BM_NormalForm)->Unit(benchmark::kMicrosecond);
