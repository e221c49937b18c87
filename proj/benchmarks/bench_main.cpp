#include <benchmark/benchmark.h>

#include <random>

#include "turlab/minimality_search.hpp"
#include "turlab/random_distributions.hpp"
#include "turlab/special_functions.hpp"
#include "turlab/swap_engine.hpp"
#include "turlab/tur_bounds.hpp"

namespace {

void BM_InverseXTanhX(benchmark::State& state)
{
    double s = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(turlab::inverse_x_tanh_x(s));
        s = s < 1e3 ? s * 1.01 : 1e-6;
    }
}
BENCHMARK(BM_InverseXTanhX);

void BM_TurBound(benchmark::State& state)
{
    double x = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(turlab::tur_bound(x));
        x = x < 50.0 ? x * 1.01 : 1e-3;
    }
}
BENCHMARK(BM_TurBound);

void BM_MomentsAndBounds(benchmark::State& state)
{
    std::mt19937_64 rng(1);
    std::vector<turlab::FtDistribution> pool;
    for (int k = 0; k < 256; ++k) {
        pool.push_back(turlab::random_ft_distribution(rng));
    }
    std::size_t k = 0;
    for (auto _ : state) {
        const auto m = turlab::moments(pool[k++ % pool.size()]);
        benchmark::DoNotOptimize(turlab::evaluate_bounds(m));
    }
}
BENCHMARK(BM_MomentsAndBounds);

void BM_EngineSweep(benchmark::State& state)
{
    turlab::SweepConfig cfg;
    for (int k = 0; k < state.range(0); ++k) {
        cfg.grid.push_back(0.05 + 1.95 * k / static_cast<double>(state.range(0) - 1));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(turlab::sweep(cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EngineSweep)->Arg(200)->Arg(10000);

void BM_MinSearch(benchmark::State& state)
{
    turlab::MinSearchOptions opts;
    opts.support_pairs = static_cast<std::size_t>(state.range(0));
    opts.starts = 16;
    for (auto _ : state) {
        benchmark::DoNotOptimize(turlab::numeric_min_search(1.0, 1.0, opts));
    }
}
BENCHMARK(BM_MinSearch)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
