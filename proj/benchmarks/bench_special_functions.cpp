#include <benchmark/benchmark.h>

#include "dirac/radial.hpp"
#include "dirac/special_functions.hpp"

using dirac::Complex;
using namespace dirac::sf;

static void BM_BesselJ_series(benchmark::State& state) {
    // mid-range argument: compensated-series path
    Complex w(18.0, 3.0);
    for (auto _ : state) benchmark::DoNotOptimize(bessel_j(0.8, w));
}
BENCHMARK(BM_BesselJ_series);

static void BM_BesselJ_asymptotic(benchmark::State& state) {
    Complex w(80.0, 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(bessel_j(0.8, w));
}
BENCHMARK(BM_BesselJ_asymptotic);

static void BM_BesselY_integer(benchmark::State& state) {
    Complex w(9.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(bessel_y(2.0, w));
}
BENCHMARK(BM_BesselY_integer);

static void BM_Hankel1_cf(benchmark::State& state) {
    // Steed continued-fraction path (mid-range, upper half-plane)
    Complex w(10.0, 6.0);
    for (auto _ : state) benchmark::DoNotOptimize(hankel1(1.3, w));
}
BENCHMARK(BM_Hankel1_cf);

static void BM_PhiKappa(benchmark::State& state) {
    dirac::radial::RadialParams p(1.3, 0.5);
    Complex z(2.0, 1.0);
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dirac::radial::Phi_kappa(p, z, x));
        x = x < 3.0 ? x + 1e-4 : 0.5;
    }
}
BENCHMARK(BM_PhiKappa);
