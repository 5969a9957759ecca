#include <benchmark/benchmark.h>

#include "ddrs/analytics.hpp"

using namespace ddrs::analytics;

namespace {

void BM_SDelta(benchmark::State& state) {
    const auto ell = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(s_delta(ell, 1e9, 0.05));
    }
}
BENCHMARK(BM_SDelta)->Arg(100)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_LambertWm1(benchmark::State& state) {
    double x = -0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambert_w_m1(x));
        x = x < -0.01 ? x + 0.001 : -0.3;
    }
}
BENCHMARK(BM_LambertWm1);

void BM_RllCount(benchmark::State& state) {
    const auto n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rll_count(8, n));
    }
}
BENCHMARK(BM_RllCount)->Arg(64)->Arg(1024)->Arg(4096);

void BM_DictBounds(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(expected_dict_bounds_fld(16, 4096, 256, 0.02, 64));
    }
}
BENCHMARK(BM_DictBounds);

} // namespace

BENCHMARK_MAIN();
