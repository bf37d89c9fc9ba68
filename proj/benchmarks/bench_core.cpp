#include <benchmark/benchmark.h>

#include <genhilbert/hilbert_operator.hpp>
#include <genhilbert/measure.hpp>
#include <genhilbert/special_functions.hpp>

using namespace genhilbert;

static void BM_Kernel(benchmark::State& state) {
    const OperatorParams p(0.5, 1.0);
    std::uint64_t m = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel(m % 200, (m * 7) % 200, p));
        ++m;
    }
}
BENCHMARK(BM_Kernel);

static void BM_CConstantBeta(benchmark::State& state) {
    const Measure mu({{0.3, 0.5}}, {{1.0, 2.0, 1.5}, {0.5, 3.0, 3.0}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(c_constant(mu, 0.5, 3.0));
    }
}
BENCHMARK(BM_CConstantBeta);

static void BM_QuadCheck(benchmark::State& state) {
    const Measure mu = Measure::lebesgue();
    for (auto _ : state) {
        benchmark::DoNotOptimize(quad_check(mu, 0.4, 0.6, 1e-8));
    }
}
BENCHMARK(BM_QuadCheck);

static void BM_TwoNormSection(benchmark::State& state) {
    const OperatorParams h(0, 0);
    const auto N = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(two_norm_section(h, Measure::lebesgue(), N));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TwoNormSection)->RangeMultiplier(4)->Range(8, 512)->Unit(benchmark::kMillisecond);

// Certified rows of H applied to the extremal input, Hilbert case.
static void BM_ExtremalRows(benchmark::State& state) {
    const OperatorParams h(0, 0);
    const Generator g = make_extremal_lp(h, 2.0, 0.05);
    const auto rows = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_tail_bounded(h, Measure::lebesgue(), g, rows - 1, {1e-9, 1'000'000}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExtremalRows)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_AtomRows(benchmark::State& state) {
    const OperatorParams p(0.5, 1.0);
    const Generator g = make_extremal_inf(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_tail_bounded(p, Measure::atom(0.25, 2.0), g, 50, {1e-11, 1'000'000}));
    }
}
BENCHMARK(BM_AtomRows)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
