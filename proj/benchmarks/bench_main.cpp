#include "nonrecip/observables.hpp"
#include "nonrecip/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace nonrecip;

namespace {

const SweepConfig& fig5c() {
    static const SweepConfig c = scenario("fig5c");
    return c;
}

void BM_SteadyState(benchmark::State& state) {
    const SweepConfig& c = fig5c();
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_steady_state(c.base.system, c.base.drive));
    }
}
BENCHMARK(BM_SteadyState);

void BM_SidebandSolve(benchmark::State& state) {
    const SweepConfig& c = fig5c();
    const SteadyState s = solve_steady_state(c.base.system, c.base.drive);
    const auto mode = state.range(0) == 0 ? SidebandMode::TwoSideband : SidebandMode::LiteralAppendix;
    double delta = c.base.drive.delta;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sideband_response(c.base.system, s, delta, ProbePort::A, mode));
        delta += 1.0;
    }
}
BENCHMARK(BM_SidebandSolve)->Arg(0)->Arg(1);

void BM_GroupDelay(benchmark::State& state) {
    const SweepConfig& c = fig5c();
    const SteadyState s = solve_steady_state(c.base.system, c.base.drive);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            converged_group_delay(c.base.system, s, c.base.drive.delta, ProbePort::C));
    }
}
BENCHMARK(BM_GroupDelay);

void BM_Sweep(benchmark::State& state) {
    SweepConfig c = fig5c();
    c.threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(c));
    state.SetItemsProcessed(state.iterations() * c.points);
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
