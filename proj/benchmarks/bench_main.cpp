// Microbenchmarks for the hot paths: spectral primitives, one solver step per
// equation family, and the Miura inversion.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "dlab/evolve.hpp"
#include "dlab/families.hpp"
#include "dlab/miura.hpp"
#include "dlab/spectral.hpp"
#include "helpers.hpp"

using namespace dlab;

namespace {

Field bench_field(std::size_t n, bool real) {
    Grid1D g(n, 40.0);
    return testutil::random_band_limited(g, 1, long(n) / 4, 7, real);
}

void BM_spectral_derivative(benchmark::State& state) {
    Field f = bench_field(std::size_t(state.range(0)), false);
    for (auto _ : state)
        benchmark::DoNotOptimize(spectral_derivative(f, 1));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_spectral_derivative)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_sobolev_norm(benchmark::State& state) {
    Field f = bench_field(std::size_t(state.range(0)), false);
    for (auto _ : state)
        benchmark::DoNotOptimize(sobolev_norm(f, -0.75));
}
BENCHMARK(BM_sobolev_norm)->RangeMultiplier(4)->Range(256, 16384);

void BM_dealiased_product(benchmark::State& state) {
    Field f = bench_field(std::size_t(state.range(0)), true);
    for (auto _ : state)
        benchmark::DoNotOptimize(dealiased_product(f, f));
}
BENCHMARK(BM_dealiased_product)->RangeMultiplier(4)->Range(256, 16384);

void BM_nls_step(benchmark::State& state) {
    Grid1D g(std::size_t(state.range(0)), 40.0);
    Field u0 = sample_field(g, [](double x) {
        return cplx(0.5 * std::exp(-x * x), 0.0);
    });
    double dt = 1e-3;
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve({EqKind::NLS}, {u0}, 0.0, dt, dt));
}
BENCHMARK(BM_nls_step)->RangeMultiplier(4)->Range(256, 16384);

void BM_kdv_step(benchmark::State& state) {
    Grid1D g(std::size_t(state.range(0)), 40.0);
    Field u0 = sample_field(
        g, [](double x) { return cplx(0.2 * std::exp(-x * x), 0.0); }, true);
    double dt = 1e-3;
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve({EqKind::KDV}, {u0}, 0.0, dt, dt));
}
BENCHMARK(BM_kdv_step)->RangeMultiplier(4)->Range(256, 16384);

void BM_mkdv_system_step(benchmark::State& state) {
    Grid1D g(std::size_t(state.range(0)), 40.0);
    Field v0 = sample_field(
        g, [](double x) { return cplx(0.2 * std::exp(-x * x), 0.0); }, true);
    double dt = 1e-3;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            evolve({EqKind::MKDV_SYSTEM}, {v0, Field(g, true)}, 0.0, dt, dt));
}
BENCHMARK(BM_mkdv_system_step)->RangeMultiplier(4)->Range(256, 4096);

void BM_odesystem_solve(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            solve_odesystem(int(state.range(0)), 0.5, 9, 1e-13));
}
BENCHMARK(BM_odesystem_solve)->Arg(8)->Arg(16)->Arg(32);

void BM_miura_inversion(benchmark::State& state) {
    Grid1D g(256, 2.0 * std::numbers::pi);
    Field u = testutil::normalized_to(
        testutil::random_band_limited(g, 1, 32, 11, true), -0.75, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(invert_gen_miura(u, 1.0, 0.0, 1e-9, 30));
}
BENCHMARK(BM_miura_inversion);

} // namespace

BENCHMARK_MAIN();
