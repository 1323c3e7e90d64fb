#include <benchmark/benchmark.h>

#include <complex>

#include "freeclt/density.hpp"
#include "freeclt/entropy.hpp"
#include "freeclt/parse.hpp"
#include "freeclt/subordination.hpp"
#include "freeclt/transforms.hpp"

namespace {

using namespace freeclt;

Measure two_atom() { return Measure::atomic({{-1.0, 0.5}, {1.0, 0.5}}); }

Measure five_atom() {
    return standardize(Measure::atomic(
        {{-1.8, 0.15}, {-0.7, 0.25}, {0.1, 0.2}, {0.9, 0.25}, {1.7, 0.15}}));
}

void BM_solve_Z(benchmark::State& state) {
    const Measure m = five_atom();
    const int n = static_cast<int>(state.range(0));
    const Complex z(0.3, 0.05);
    for (auto _ : state) benchmark::DoNotOptimize(solve_Z(m, n, z).Z);
}
BENCHMARK(BM_solve_Z)->Arg(2)->Arg(32)->Arg(256);

void BM_cauchy_mu_n(benchmark::State& state) {
    const Measure m = two_atom();
    const Complex z(0.4, 1e-5);
    for (auto _ : state) benchmark::DoNotOptimize(cauchy_mu_n(m, 64, z));
}
BENCHMARK(BM_cauchy_mu_n);

void BM_invert_density(benchmark::State& state) {
    const Measure m = two_atom();
    const GridSpec grid{-4.0, 4.0, static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(invert_density(m, 64, grid).values);
}
BENCHMARK(BM_invert_density)->Arg(501)->Arg(2001)->Unit(benchmark::kMillisecond);

void BM_log_energy(benchmark::State& state) {
    const DensityProfile p = sample_density(
        Measure::semicircle(), {-2.05, 2.05, static_cast<std::size_t>(state.range(0))});
    for (auto _ : state) benchmark::DoNotOptimize(log_energy(p));
}
BENCHMARK(BM_log_energy)->Arg(2001)->Arg(8001)->Unit(benchmark::kMillisecond);

void BM_fisher(benchmark::State& state) {
    const DensityProfile p = sample_density(Measure::semicircle(), {-2.05, 2.05, 8001});
    for (auto _ : state) benchmark::DoNotOptimize(fisher_information(p));
}
BENCHMARK(BM_fisher)->Unit(benchmark::kMillisecond);

void BM_moments_from_tau(benchmark::State& state) {
    const TauRepresentation tau = tau_from_atomic(five_atom());
    for (auto _ : state)
        for (int k = 2; k <= 8; ++k) benchmark::DoNotOptimize(moments_from_tau(tau, k));
}
BENCHMARK(BM_moments_from_tau);

void BM_parse(benchmark::State& state) {
    const std::string text = "atoms((-1.8,0.15),(-0.7,0.25),(0.1,0.2),(0.9,0.25),(1.7,0.15)):std";
    for (auto _ : state) benchmark::DoNotOptimize(parse_measure(text));
}
BENCHMARK(BM_parse);

} // namespace

BENCHMARK_MAIN();
