#include <benchmark/benchmark.h>

#include "caymaze/bounds.hpp"
#include "caymaze/scenario.hpp"
#include "caymaze/simulator.hpp"

namespace {

using namespace caymaze;

void BM_StepHeisenberg(benchmark::State& state) {
    const GroupBackend backend = GroupBackend::heisenberg_mod_p(3);
    const Collective col = scenario::random_collective(
        7, static_cast<int>(state.range(0)), 3, backend);
    Configuration cur = start_configuration(col);
    for (auto _ : state) {
        cur = step(backend, col, cur);
        benchmark::DoNotOptimize(cur);
    }
}
BENCHMARK(BM_StepHeisenberg)->Arg(1)->Arg(2)->Arg(3)->Arg(5);

void BM_CertifyRandom(benchmark::State& state) {
    const GroupBackend backend = GroupBackend::heisenberg_mod_p(3);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const Collective col = scenario::random_collective(
            seed++, static_cast<int>(state.range(0)), 3, backend);
        benchmark::DoNotOptimize(
            certify(backend, col, start_configuration(col), 1'000'000));
    }
}
BENCHMARK(BM_CertifyRandom)->Arg(1)->Arg(2)->Arg(3);

void BM_ComputeBounds(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_bounds(
            BoundParams{static_cast<int>(state.range(0)), 3, 3}));
    }
}
BENCHMARK(BM_ComputeBounds)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
