#include <benchmark/benchmark.h>

#include "thermo/misiurewicz.hpp"
#include "thermo/topo_pressure.hpp"
#include "thermo/zoo.hpp"

using namespace thermo;

static void BM_SeparatedFullShift(benchmark::State& state)
{
    auto entry = zoo_entry("full-2-shift");
    auto f = Potential::indicator(2, {0});
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(separated_pressure(entry.scaffold, f, 0.3, n));
}
BENCHMARK(BM_SeparatedFullShift)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_SeparatedDoubling(benchmark::State& state)
{
    auto entry = zoo_entry("doubling-map");
    auto f = Potential::indicator(2, {0});
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(separated_pressure(entry.scaffold, f, 0.3, n));
}
BENCHMARK(BM_SeparatedDoubling)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_PipelineGoldenMean(benchmark::State& state)
{
    auto entry = zoo_entry("golden-mean");
    auto factory = extension_factory(entry);
    auto f = Potential::constant(0.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(lower_bound_pipeline(factory, f, 0.3, {2, 4, 6}, {2, 3}));
}
BENCHMARK(BM_PipelineGoldenMean)->Unit(benchmark::kMillisecond);
