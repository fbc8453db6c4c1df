#include <benchmark/benchmark.h>

#include "ottoref/dynamics.hpp"
#include "ottoref/experiment.hpp"

using namespace ottoref;

namespace {

DriveParams bench_drive()
{
    DriveParams p;
    p.omega = 0.1;
    return p;
}

std::vector<BathParams> bench_baths()
{
    const DriveParams p = bench_drive();
    return {default_cold_bath(p), default_hot_bath(p)};
}

}  // namespace

static void BM_eigenframe(benchmark::State& state)
{
    const DriveParams p = bench_drive();
    const Mode mode = state.range(0) ? Mode::CounterDiabatic : Mode::Original;
    double t = 0.0;
    for (auto _ : state) {
        t += 1e-3;
        benchmark::DoNotOptimize(eigenframe(t, p, mode));
    }
}
BENCHMARK(BM_eigenframe)->Arg(0)->Arg(1);

static void BM_lindblad_rhs(benchmark::State& state)
{
    const DriveParams p = bench_drive();
    const auto baths = bench_baths();
    const Mode mode = state.range(0) ? Mode::CounterDiabatic : Mode::Original;
    const Mat2 rho = gibbs_state(baths[0].beta, eigenframe(0.0, p, Mode::Original));
    double t = 0.0;
    for (auto _ : state) {
        t += 1e-3;
        benchmark::DoNotOptimize(lindblad_rhs(rho, t, p, baths, mode));
    }
}
BENCHMARK(BM_lindblad_rhs)->Arg(0)->Arg(1);

static void BM_noise_power(benchmark::State& state)
{
    const BathParams b = bench_baths()[0];
    double w = 0.2;
    for (auto _ : state) {
        w = w < 2.0 ? w + 1e-4 : 0.2;
        benchmark::DoNotOptimize(noise_power(w, b));
    }
}
BENCHMARK(BM_noise_power);

static void BM_one_period(benchmark::State& state)
{
    const DriveParams p = bench_drive();
    const auto baths = bench_baths();
    const Mode mode = state.range(0) ? Mode::CounterDiabatic : Mode::Original;
    const Mat2 rho0 = gibbs_state(baths[0].beta, eigenframe(0.0, p, Mode::Original));
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate(rho0, 0.0, p.period(), 20000, p, baths, mode));
}
BENCHMARK(BM_one_period)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_limit_cycle(benchmark::State& state)
{
    const DriveParams p = bench_drive();
    const auto baths = bench_baths();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            find_limit_cycle(p, baths, Mode::CounterDiabatic, 20000, 1e-9, 200));
}
BENCHMARK(BM_limit_cycle)->Unit(benchmark::kMillisecond);

static void BM_classical_cycle(benchmark::State& state)
{
    const DriveParams p = bench_drive();
    const auto baths = bench_baths();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            find_limit_cycle(ClassicalState{1.0, 0.0}, p, baths, 20000, 1e-9, 200));
}
BENCHMARK(BM_classical_cycle)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
