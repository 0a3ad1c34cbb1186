// Microbenchmarks for the hot kernels: the radial and periodic transforms,
// multiplier application, the Strang step, and the O(n^6) Morawetz pair sum.

#include <benchmark/benchmark.h>

#include <cmath>

#include "wnls/diagnostics.hpp"
#include "wnls/dynamics.hpp"
#include "wnls/multipliers.hpp"
#include "wnls/params.hpp"
#include "wnls/transforms.hpp"

using namespace wnls;

namespace {

Field radial_gaussian(const GridPtr& g, double amp) {
    Field f(g);
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double r = g->radii()[j];
        f[j] = amp * std::exp(-pi * r * r);
    }
    return f;
}

Field periodic_gaussian(const GridPtr& g, double amp, double width) {
    const std::size_t n = g->n();
    const double h = g->extent() / static_cast<double>(n);
    const double c = g->extent() / 2.0;
    Field f(g);
    std::size_t idx = 0;
    for (std::size_t i1 = 0; i1 < n; ++i1)
        for (std::size_t i2 = 0; i2 < n; ++i2)
            for (std::size_t i3 = 0; i3 < n; ++i3, ++idx) {
                const double x = i1 * h - c, y = i2 * h - c, z = i3 * h - c;
                f[idx] = amp * std::exp(-pi * (x * x + y * y + z * z) / (width * width));
            }
    return f;
}

}  // namespace

static void BM_RadialTransform(benchmark::State& state) {
    auto g = Grid::radial(32.0, static_cast<std::size_t>(state.range(0)));
    Field f = radial_gaussian(g, 1.0);
    for (auto _ : state) {
        SpectralField sp = transform(f);
        benchmark::DoNotOptimize(sp.coeffs.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RadialTransform)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

static void BM_RadialRoundTrip(benchmark::State& state) {
    auto g = Grid::radial(32.0, static_cast<std::size_t>(state.range(0)));
    Field f = radial_gaussian(g, 1.0);
    for (auto _ : state) {
        Field back = inverse_transform(transform(f));
        benchmark::DoNotOptimize(back.samples().data());
    }
}
BENCHMARK(BM_RadialRoundTrip)->Arg(1024)->Arg(4096);

static void BM_PeriodicTransform(benchmark::State& state) {
    auto g = Grid::periodic(16.0, static_cast<std::size_t>(state.range(0)));
    Field f = periodic_gaussian(g, 1.0, 2.0);
    for (auto _ : state) {
        SpectralField sp = transform(f);
        benchmark::DoNotOptimize(sp.coeffs.data());
    }
}
BENCHMARK(BM_PeriodicTransform)->Arg(16)->Arg(32)->Arg(64);

static void BM_ApplyMultiplier(benchmark::State& state) {
    auto g = Grid::radial(32.0, static_cast<std::size_t>(state.range(0)));
    Field f = radial_gaussian(g, 1.0);
    const auto spec = MultiplierSpec::i_operator(8.0, 0.75);
    for (auto _ : state) {
        Field out = apply_multiplier(f, spec);
        benchmark::DoNotOptimize(out.samples().data());
    }
}
BENCHMARK(BM_ApplyMultiplier)->Arg(1024)->Arg(4096);

static void BM_StrangStep(benchmark::State& state) {
    auto g = Grid::radial(32.0, static_cast<std::size_t>(state.range(0)));
    CoupledState st;
    st.u = radial_gaussian(g, 1.0);
    st.v = radial_gaussian(g, 0.8);
    st.params = PhysParams{1.0, 1.0, 0.75, 16.0};
    for (auto _ : state) {
        st = strang_step(st, 1e-3);
        benchmark::DoNotOptimize(st.u.samples().data());
    }
}
BENCHMARK(BM_StrangStep)->Arg(1024)->Arg(4096);

static void BM_ModifiedEnergyDerivative(benchmark::State& state) {
    auto g = Grid::radial(16.0, 1024);
    CoupledState st;
    st.u = radial_gaussian(g, 2.0);
    st.v = radial_gaussian(g, 1.5);
    st.params = PhysParams{1.0, 1.0, 0.75, 8.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(modified_energy_derivative(st, 8.0, 0.75));
    }
}
BENCHMARK(BM_ModifiedEnergyDerivative);

static void BM_MorawetzPairSum(benchmark::State& state) {
    auto g = Grid::periodic(16.0, static_cast<std::size_t>(state.range(0)));
    CoupledState st;
    st.u = periodic_gaussian(g, 1.0, 2.5);
    st.v = periodic_gaussian(g, 0.8, 2.0);
    for (std::size_t j = 0; j < st.u.size(); ++j) st.v[j] *= cplx(0.9, 0.1);
    st.params = PhysParams{1.0, 1.0, 0.75, 16.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(morawetz_potential(st));
    }
}
BENCHMARK(BM_MorawetzPairSum)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
