#include <random>

#include <benchmark/benchmark.h>

#include "thermo/set_cover.hpp"

using namespace thermo;

namespace {

std::vector<PointSet> random_family(std::size_t elements, std::size_t sets, double density, unsigned seed)
{
    std::mt19937 rng(seed);
    std::bernoulli_distribution in(density);
    std::vector<PointSet> out(sets, PointSet(elements));
    for (auto& s : out)
        for (std::size_t e = 0; e < elements; ++e)
            if (in(rng))
                s.set(e);
    for (std::size_t e = 0; e < elements; ++e)
        out[e % sets].set(e);
    return out;
}

std::vector<PointSet> circulant(std::size_t n, std::size_t width)
{
    std::vector<PointSet> adj(n, PointSet(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 1; k <= width; ++k) {
            adj[i].set((i + k) % n);
            adj[(i + k) % n].set(i);
        }
    return adj;
}

} // namespace

static void BM_SetCoverRandom(benchmark::State& state)
{
    const auto elements = static_cast<std::size_t>(state.range(0));
    auto sets = random_family(elements, elements * 3 / 2, 0.1, 5);
    std::vector<double> w(sets.size(), 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(min_weight_set_cover(sets, w));
}
BENCHMARK(BM_SetCoverRandom)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_SetCoverArcs(benchmark::State& state)
{
    const auto m = static_cast<std::size_t>(state.range(0));
    std::vector<PointSet> sets(m, PointSet(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t k = 0; k < 7; ++k)
            sets[a].set((a + k) % m);
    std::vector<double> w(m);
    for (std::size_t a = 0; a < m; ++a)
        w[a] = 1.0 + static_cast<double>(a % 5) / 4.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(min_weight_set_cover(sets, w));
}
BENCHMARK(BM_SetCoverArcs)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_IndependentSetRandom(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    auto rows = random_family(n, n, 0.1, 9);
    std::vector<PointSet> adj(n, PointSet(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && rows[i].test(j)) {
                adj[i].set(j);
                adj[j].set(i);
            }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 1.0 + static_cast<double>(i % 7) / 3.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(max_weight_independent_set(adj, w));
}
BENCHMARK(BM_IndependentSetRandom)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_IndependentSetCirculant(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    auto adj = circulant(n, 10);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 1.0 + static_cast<double>(i % 11) / 10.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(max_weight_independent_set(adj, w));
}
BENCHMARK(BM_IndependentSetCirculant)->Arg(1023)->Arg(4095)->Unit(benchmark::kMillisecond);
