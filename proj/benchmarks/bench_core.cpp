// Microbenchmarks for the hot paths of the Monte Carlo loops: statistic
// evaluation, resampling, fluctuation analysis and pair simulation.

#include <benchmark/benchmark.h>

#include "rct/bootstrap.hpp"
#include "rct/detail/stat_kernels.hpp"
#include "rct/estimators.hpp"
#include "rct/simulate.hpp"

using namespace rct;

namespace {

BivariatePair make_pair(int length) { return gaussian_pair(length, 0.9, 42); }

void BM_rct_statistic(benchmark::State& state) {
    const int length = static_cast<int>(state.range(0));
    const int q = static_cast<int>(state.range(1));
    const BivariatePair p = make_pair(length);
    detail::StatWorkspace ws;
    for (auto _ : state) {
        const detail::StatEval ev =
            detail::eval_rct_statistic(p.x().span(), p.y().span(), q, 0.5, 0.5, ws);
        benchmark::DoNotOptimize(ev.m);
    }
    state.SetItemsProcessed(state.iterations() * length);
}
BENCHMARK(BM_rct_statistic)->Args({500, 10})->Args({1000, 30})->Args({5000, 10})->Args({5000, 30});

void BM_mbb_resample(benchmark::State& state) {
    const int length = static_cast<int>(state.range(0));
    const BivariatePair p = make_pair(length);
    const int zeta = default_block_size(length, 10);
    Rng rng(7);
    std::vector<double> x, y;
    for (auto _ : state) {
        detail::mbb_resample_into(p.x().span(), p.y().span(), zeta, rng, x, y);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(state.iterations() * length);
}
BENCHMARK(BM_mbb_resample)->Arg(500)->Arg(5000);

void BM_dfa_hurst(benchmark::State& state) {
    const int length = static_cast<int>(state.range(0));
    const BivariatePair p = make_pair(length);
    std::vector<double> scratch;
    for (auto _ : state) {
        const double h = detail::dfa_hurst(p.x().span(), DfaConfig{}, scratch);
        benchmark::DoNotOptimize(h);
    }
    state.SetItemsProcessed(state.iterations() * length);
}
BENCHMARK(BM_dfa_hurst)->Arg(500)->Arg(1000)->Arg(5000);

void BM_simulate_arfima(benchmark::State& state) {
    ArfimaPairSpec spec;
    spec.d1 = spec.d2 = 0.4;
    spec.rho = 0.9;
    spec.length = static_cast<int>(state.range(0));
    Seed seed = 1;
    for (auto _ : state) {
        const BivariatePair p = simulate_arfima_pair(spec, seed++);
        benchmark::DoNotOptimize(p.x().values().data());
    }
    state.SetItemsProcessed(state.iterations() * spec.length);
}
BENCHMARK(BM_simulate_arfima)->Arg(1000)->Arg(5000);

void BM_rct_test(benchmark::State& state) {
    const BivariatePair p = make_pair(static_cast<int>(state.range(0)));
    MbbConfig cfg;
    cfg.replicates = 100;
    cfg.hurst_mode = HurstMode::UserSupplied;
    cfg.seed = 3;
    for (auto _ : state) {
        const RctResult r = rct_test(p, 10, cfg);
        benchmark::DoNotOptimize(r.p_value);
    }
}
BENCHMARK(BM_rct_test)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace
