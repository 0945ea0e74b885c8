#include "cascade/control_laws.hpp"
#include "cascade/scenario.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace cascade;

void BM_ControlEvaluation(benchmark::State& state) {
    const Scenario s = make_preset("baseline");
    const RateSample prev{true, 1e-4, 2e-4};
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_control(
            1.0, s.initial.state, s.initial.delta_p, s.thrust.at(1.0),
            s.program, s.gains, s.aircraft, prev, s.dt,
            s.initial.state.alpha, std::nullopt, s.control));
    }
}
BENCHMARK(BM_ControlEvaluation);

void BM_SimulatedSecond(benchmark::State& state) {
    Scenario s = make_preset("baseline");
    s.t_final = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(s));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<int64_t>(1.0 / s.dt));
}
BENCHMARK(BM_SimulatedSecond)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
