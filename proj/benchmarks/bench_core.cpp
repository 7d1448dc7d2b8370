// Microbenchmarks for the solver hot paths: Liouvillian assembly, steady-state
// solves, regression correlation series, and the spectrum transform.

#include <benchmark/benchmark.h>

#include "cqed/correlations.hpp"
#include "cqed/models.hpp"
#include "cqed/spectra.hpp"

using namespace cqed;

namespace {

models::TwoLevelParams params_at(std::size_t n_max) {
    models::TwoLevelParams p;
    p.kappa = 1.0;
    p.g = 1.0;
    p.n_max = n_max;
    return p;
}

void bm_build_two_level(benchmark::State& state) {
    const auto p = params_at(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto sys = models::build_two_level(p);
        benchmark::DoNotOptimize(sys.liouvillian.super_matrix().nonZeros());
    }
}
BENCHMARK(bm_build_two_level)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void bm_steady_state_direct(benchmark::State& state) {
    const auto sys = models::build_two_level(params_at(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
        auto rho = lindblad::steady_state(sys.liouvillian);
        benchmark::DoNotOptimize(rho.matrix()(0, 0));
    }
}
BENCHMARK(bm_steady_state_direct)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void bm_steady_state_iterative(benchmark::State& state) {
    const auto sys = models::build_two_level(params_at(static_cast<std::size_t>(state.range(0))));
    lindblad::SteadyStateOptions opts;
    opts.method = lindblad::SteadyStateOptions::Method::iterative;
    for (auto _ : state) {
        auto rho = lindblad::steady_state(sys.liouvillian, opts);
        benchmark::DoNotOptimize(rho.matrix()(0, 0));
    }
}
BENCHMARK(bm_steady_state_iterative)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void bm_g2_series(benchmark::State& state) {
    const auto sys = models::build_two_level(params_at(3));
    const auto rho = lindblad::steady_state(sys.liouvillian);
    const auto tau = lindblad::uniform_grid(static_cast<double>(state.range(0)), 101);
    for (auto _ : state) {
        auto series = correlations::second_order(sys.liouvillian, rho, sys.op("b"), sys.op("r"),
                                                 tau);
        benchmark::DoNotOptimize(series.values.back());
    }
}
BENCHMARK(bm_g2_series)->Arg(1)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void bm_power_spectrum(benchmark::State& state) {
    const auto sys = models::build_two_level(params_at(3));
    const auto rho = lindblad::steady_state(sys.liouvillian);
    const auto tau = lindblad::uniform_grid(40.0, 8001);
    const auto corr = correlations::first_order(sys.liouvillian, rho, sys.op("sigma_minus"), tau);
    const auto omega = spectra::linspace(-40.0, 40.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto s = spectra::power_spectrum(corr, omega, "atomic");
        benchmark::DoNotOptimize(s.values.back());
    }
}
BENCHMARK(bm_power_spectrum)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
