#include <benchmark/benchmark.h>

#include <complex>

#include "rmf/euler.hpp"
#include "rmf/expectations.hpp"
#include "rmf/primes.hpp"
#include "rmf/sampler.hpp"

using namespace rmf;

static void BM_BuildTable(benchmark::State& state) {
    uint64_t limit = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        PrimeTable t = build_table(limit);
        benchmark::DoNotOptimize(t.primes().size());
    }
    state.SetItemsProcessed(state.iterations() * limit);
}
BENCHMARK(BM_BuildTable)->Arg(1 << 20)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_PartialSum(benchmark::State& state) {
    static PrimeTable t = build_table(1 << 20);
    uint64_t x = static_cast<uint64_t>(state.range(0));
    uint64_t stream = 0;
    for (auto _ : state) {
        MultiplicativeSample s(Model::steinhaus, t, 1, stream++);
        benchmark::DoNotOptimize(partial_sum(s, x));
    }
    state.SetItemsProcessed(state.iterations() * x);
}
BENCHMARK(BM_PartialSum)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

static void BM_PartialSumRademacher(benchmark::State& state) {
    static PrimeTable t = build_table(1 << 20);
    uint64_t x = static_cast<uint64_t>(state.range(0));
    uint64_t stream = 0;
    for (auto _ : state) {
        MultiplicativeSample s(Model::rademacher, t, 1, stream++);
        benchmark::DoNotOptimize(partial_sum(s, x));
    }
    state.SetItemsProcessed(state.iterations() * x);
}
BENCHMARK(BM_PartialSumRademacher)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

static void BM_EulerIntegral(benchmark::State& state) {
    static PrimeTable t = build_table(10000);
    euler::EulerParams p{10000, -1, 0.1, 1.5, 0, 0.0};
    uint64_t stream = 0;
    for (auto _ : state) {
        MultiplicativeSample s(Model::steinhaus, t, 2, stream++);
        benchmark::DoNotOptimize(euler::integral_sq(s, p));
    }
}
BENCHMARK(BM_EulerIntegral)->Unit(benchmark::kMillisecond);

static void BM_SteinhausPrimeExpectation(benchmark::State& state) {
    uint64_t p = static_cast<uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            expectations::steinhaus_prime_expectation(p, 0.01, 1.0, 2.0, 0.5));
}
BENCHMARK(BM_SteinhausPrimeExpectation)->Arg(101)->Arg(10007)->Arg(999983);

static void BM_ExactRangeProduct(benchmark::State& state) {
    static PrimeTable t = build_table(1000000);
    expectations::TwoPointParams tp{1.0, 1.0, 0.0, 0.5, 0.5, 0.0, 200.0, 1000000.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            expectations::exact_range_product(tp, Model::steinhaus, t));
    state.SetItemsProcessed(state.iterations() * t.primes().size());
}
BENCHMARK(BM_ExactRangeProduct)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
