#include <benchmark/benchmark.h>

#include "qjp/geometry.hpp"
#include "qjp/measurement.hpp"
#include "qjp/meter_grid.hpp"
#include "qjp/qjp_dist.hpp"
#include "qjp/random.hpp"

namespace {

using namespace qjp;

void bm_spectral_decompose(benchmark::State& state) {
    RandomSource rng(1);
    const int dim = static_cast<int>(state.range(0));
    Matrix h = rng.hermitian(dim);
    double tol = default_eig_tol(h);
    for (auto _ : state) {
        SpectralDecomposition d = spectral_decompose(h, tol);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(bm_spectral_decompose)->Arg(4)->Arg(16)->Arg(64);

void bm_composite_evolution(benchmark::State& state) {
    RandomSource rng(2);
    const int dim = static_cast<int>(state.range(0));
    Matrix h = rng.hermitian(dim);
    SpectralDecomposition d = spectral_decompose(h / operator_norm(h), 1e-9);
    PureState phi = rng.state(dim);
    Grid grid(1024, 40.0 / 1024);
    GridWavefunction psi = gaussian_state(grid, 0.0, 1.0);
    for (auto _ : state) {
        CompositeState cs = evolve_composite(d, phi, psi, 1.5);
        benchmark::DoNotOptimize(um_expectation(cs, MeterObservable::position));
    }
}
BENCHMARK(bm_composite_evolution)->Arg(2)->Arg(8);

void bm_wigner_ville(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Grid grid(n, 40.0 / n);
    GridWavefunction psi = gaussian_state(grid, 0.0, 1.0);
    for (auto _ : state) {
        WignerTable w = wigner_ville(psi);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(bm_wigner_ville)->Arg(256)->Arg(1024);

void bm_qjp_table(benchmark::State& state) {
    RandomSource rng(3);
    const int dim = static_cast<int>(state.range(0));
    Matrix am = rng.hermitian(dim), bm = rng.hermitian(dim);
    SpectralDecomposition a = spectral_decompose(am, default_eig_tol(am));
    SpectralDecomposition b = spectral_decompose(bm, default_eig_tol(bm));
    PureState phi = rng.state(dim);
    for (auto _ : state) {
        QuasiProbTable t = qjp_convolutive(Complex(0.0, 1.0), a, b, phi);
        benchmark::DoNotOptimize(marginals_and_moments(t));
    }
}
BENCHMARK(bm_qjp_table)->Arg(2)->Arg(4)->Arg(8);

void bm_projection(benchmark::State& state) {
    RandomSource rng(4);
    const int dim = static_cast<int>(state.range(0));
    Matrix am = rng.hermitian(dim), bm = rng.hermitian(dim);
    SpectralDecomposition b = spectral_decompose(bm, default_eig_tol(bm));
    PureState psi = rng.state(dim);
    for (auto _ : state) {
        ConditionalFunction f = project_onto_algebra(0.5, am, b, psi);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(bm_projection)->Arg(4)->Arg(16);

} // namespace

BENCHMARK_MAIN();
