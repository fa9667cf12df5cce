#include <benchmark/benchmark.h>

#include <vector>

#include "maclaurin/constants.hpp"
#include "maclaurin/sampling.hpp"
#include "maclaurin/symmetric_means.hpp"
#include "maclaurin/ustat.hpp"

using namespace maclaurin;

namespace {

std::vector<double> positive(std::size_t n) {
  RngStream rng(1);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.exponential();
  return v;
}

void BM_ElemSymAll(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto v = positive(n);
  for (auto _ : state) benchmark::DoNotOptimize(elem_sym_log_all(v, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ElemSymAll)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oNSquared);

void BM_ElemSymFixedK(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto v = positive(n);
  for (auto _ : state) benchmark::DoNotOptimize(elem_sym_log(v, 3));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ElemSymFixedK)->RangeMultiplier(4)->Range(16, 16384)->Complexity(benchmark::oN);

void BM_HoeffdingComponents(benchmark::State& state) {
  const auto v = positive(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hoeffding_components(v, 3, 1.0));
}
BENCHMARK(BM_HoeffdingComponents)->Arg(1024)->Arg(16384);

void BM_Cone(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double p = static_cast<double>(state.range(1)) / 2.0;
  RngStream rng(2);
  SampleVector x;
  for (auto _ : state) {
    sample_cone_into(rng, n, p, x);
    benchmark::DoNotOptimize(x.norm_p());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Cone)->Args({1024, 2})->Args({1024, 3})->Args({1024, 4})->Args({1024, 6});

void BM_Surface(benchmark::State& state) {
  const double p = static_cast<double>(state.range(0)) / 2.0;
  RngStream rng(3);
  SampleVector x;
  for (auto _ : state) {
    sample_surface_into(rng, 256, p, x);
    benchmark::DoNotOptimize(x.norm_p());
  }
}
BENCHMARK(BM_Surface)->Arg(2)->Arg(3)->Arg(8);

void BM_Gamma(benchmark::State& state) {
  const double shape = static_cast<double>(state.range(0)) / 10.0;
  RngStream rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(sample_gamma(rng, shape));
}
BENCHMARK(BM_Gamma)->Arg(3)->Arg(5)->Arg(10)->Arg(25);

void BM_CltAStatistic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PGaussConstants c = compute_constants(2.0);
  RngStream rng(5);
  const SampleVector x = sample_cone(rng, n, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(clt_a_statistic(x, 3, c).value);
}
BENCHMARK(BM_CltAStatistic)->Arg(1024)->Arg(16384);

void BM_Constants(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compute_constants(3.0).m());
}
BENCHMARK(BM_Constants)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
