#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "dualspin/analysis.hpp"
#include "dualspin/chaos01.hpp"
#include "dualspin/fft.hpp"

using namespace dualspin;

namespace {

SystemParams bench_params() { return make_params(5000.0, 110.0, 20.0); }

Trajectory short_run(double t_total) {
    SystemParams p = bench_params();
    IntegrationConfig cfg;
    cfg.t_total_s = t_total;
    cfg.t_transient_s = 0.0;
    return integrate(p, default_initial_state(p, 0.1), cfg);
}

}  // namespace

static void BM_VectorField(benchmark::State& state) {
    const SystemParams p = bench_params();
    SpinState s = default_initial_state(p, 0.1);
    for (auto _ : state) {
        const SpinState d = vector_field(s, p);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_VectorField);

static void BM_Integrate100ms(benchmark::State& state) {
    for (auto _ : state) {
        const Trajectory traj = short_run(0.1);
        benchmark::DoNotOptimize(traj.mx.data());
    }
}
BENCHMARK(BM_Integrate100ms)->Unit(benchmark::kMillisecond);

static void BM_IntegrateNoisy100ms(benchmark::State& state) {
    const SystemParams p = bench_params();
    const SpinState init = default_initial_state(p, 0.1);
    IntegrationConfig cfg;
    cfg.t_total_s = 0.1;
    cfg.t_transient_s = 0.0;
    NoiseConfig nz;
    nz.enabled = true;
    nz.sigma_b_nt = 10.0;
    for (auto _ : state) {
        const Trajectory traj = integrate_noisy(p, init, cfg, nz);
        benchmark::DoNotOptimize(traj.mx.data());
    }
}
BENCHMARK(BM_IntegrateNoisy100ms)->Unit(benchmark::kMillisecond);

static void BM_Fft(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<std::complex<double>> base(n);
    for (std::size_t j = 0; j < n; ++j) base[j] = std::sin(0.01 * static_cast<double>(j));
    for (auto _ : state) {
        auto buf = base;
        fft::transform(buf);
        benchmark::DoNotOptimize(buf.data());
    }
}
BENCHMARK(BM_Fft)->Arg(1 << 16)->Arg(1 << 19)->Arg(1 << 21)->Unit(benchmark::kMillisecond);

static void BM_Spectrum(benchmark::State& state) {
    const Trajectory traj = short_run(1.0);
    for (auto _ : state) {
        const Spectrum spec = spectrum(traj);
        benchmark::DoNotOptimize(spec.amps.data());
    }
}
BENCHMARK(BM_Spectrum)->Unit(benchmark::kMillisecond);

static void BM_Chaos01(benchmark::State& state) {
    std::vector<double> x(20000);
    double v = 0.3;
    for (auto& xi : x) {
        v = 3.99 * v * (1.0 - v);
        xi = v;
    }
    Chaos01Options opt;
    opt.seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(chaos01_k(x, 1.0, opt));
    }
}
BENCHMARK(BM_Chaos01)->Unit(benchmark::kMillisecond);

static void BM_PoincareSection(benchmark::State& state) {
    const Trajectory traj = short_run(1.0);
    for (auto _ : state) {
        const PoincareSection sec = poincare_section(traj);
        benchmark::DoNotOptimize(sec.points.data());
    }
}
BENCHMARK(BM_PoincareSection)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
