#include <benchmark/benchmark.h>

#include "fbms/capmetric.hpp"
#include "fbms/jacobi.hpp"
#include "fbms/rotprofile.hpp"
#include "fbms/spectrum.hpp"

namespace {

void BM_SolveT0(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(fbms::rotprofile::solve_t0());
}
BENCHMARK(BM_SolveT0);

void BM_MetricSample(benchmark::State& state) {
    const fbms::capmetric::Vec3 x(0.3, -0.2, 0.4);
    for (auto _ : state)
        benchmark::DoNotOptimize(fbms::capmetric::sample(0.5, x));
}
BENCHMARK(BM_MetricSample);

void BM_ModeDeterminant(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(fbms::jacobi::mode_bvp_determinant(n));
}
BENCHMARK(BM_ModeDeterminant)->Arg(0)->Arg(1)->Arg(3);

void BM_CatenoidModeSpectrum(benchmark::State& state) {
    const int points = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(fbms::spectrum::catenoid_mode_spectrum(1, points));
}
BENCHMARK(BM_CatenoidModeSpectrum)->Arg(257)->Arg(513);

void BM_CriticalCatenoid(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(fbms::rotprofile::solve_critical_catenoid(0.1));
}
BENCHMARK(BM_CriticalCatenoid);

}  // namespace

BENCHMARK_MAIN();
