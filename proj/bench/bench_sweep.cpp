// Serial versus OpenMP sweeps, and the two Lyapunov solvers on one point.

#include <benchmark/benchmark.h>

#include "omcool/lyapunov.hpp"
#include "omcool/presets.hpp"
#include "omcool/sweep.hpp"

namespace {

omcool::SweepSpec fig2_grid(std::size_t points) {
    const auto preset = omcool::make_preset("fig2a", points);
    const auto& c = omcool::preset_case(preset);
    return {c.config, c.axes, {}};
}

void BM_SweepSerial(benchmark::State& state) {
    const auto spec = fig2_grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(omcool::run_sweep_serial(spec));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto spec = fig2_grid(static_cast<std::size_t>(state.range(0)));
    const int jobs = omcool::default_jobs();
    for (auto _ : state) benchmark::DoNotOptimize(omcool::run_sweep(spec, jobs));
}

void lyapunov_point(benchmark::State& state, omcool::LyapunovMethod method, const char* preset_name) {
    const auto preset = omcool::make_preset(preset_name, 2);
    const auto config = omcool::validate_config(omcool::preset_case(preset).config);
    const auto a = omcool::build_drift_matrix(config);
    const auto q = omcool::build_noise_matrix(config);
    omcool::LyapunovOptions options;
    options.method = method;
    for (auto _ : state) benchmark::DoNotOptimize(omcool::solve_lyapunov(a, q, options));
}

void BM_LyapunovVectorized(benchmark::State& state) {
    lyapunov_point(state, omcool::LyapunovMethod::vectorized, "fig11b");
}

void BM_LyapunovSchur(benchmark::State& state) { lyapunov_point(state, omcool::LyapunovMethod::schur, "fig11b"); }

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LyapunovVectorized)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LyapunovSchur)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
