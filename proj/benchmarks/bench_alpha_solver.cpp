#include "cascade/alpha_manifold.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace cascade;

const AircraftParams kParams = AircraftParams::nominal_fighter();
const ManeuverProgram kProg{0.02, 0.002, 0.11};
const ManifoldPoint kPoint{1.5, 200.0, 0.03, 3000.0, 0.05, 30000.0};

void BM_SolveCold(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            solve_alpha_command(kPoint, kProg, -1.0, kParams));
    }
}
BENCHMARK(BM_SolveCold);

void BM_SolveWarm(benchmark::State& state) {
    const AlphaCommand seed = solve_alpha_command(kPoint, kProg, -1.0, kParams);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            solve_alpha_command(kPoint, kProg, -1.0, kParams, seed.phi));
    }
}
BENCHMARK(BM_SolveWarm);

void BM_Residual(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            manifold_residual(kPoint, 0.05, kProg, -1.0, kParams));
    }
}
BENCHMARK(BM_Residual);

void BM_Partials(benchmark::State& state) {
    const AlphaCommand cmd = solve_alpha_command(kPoint, kProg, -1.0, kParams);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            phi_partials(kPoint, cmd.phi, kProg, -1.0, kParams));
    }
}
BENCHMARK(BM_Partials);

void BM_AirDensity(benchmark::State& state) {
    double h = 0.0;
    for (auto _ : state) {
        h += 1.0;
        if (h > 20000.0) h = 0.0;
        benchmark::DoNotOptimize(air_density(h));
    }
}
BENCHMARK(BM_AirDensity);

} // namespace
