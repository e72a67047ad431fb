#include <benchmark/benchmark.h>

#include "dirac/ode.hpp"
#include "dirac/radial.hpp"

using namespace dirac;

static void BM_Integrate_free(benchmark::State& state) {
    auto pot = DiracPotential::free_potential(Interval(-kInf, kInf));
    Complex z(static_cast<double>(state.range(0)), 0.0);
    for (auto _ : state) {
        auto tr = integrate(pot, z, 0.0, {{0, 0}, {1, 0}}, 5.0);
        benchmark::DoNotOptimize(tr.eval(5.0));
    }
}
BENCHMARK(BM_Integrate_free)->Arg(5)->Arg(20)->Arg(50);

static void BM_Integrate_radial(benchmark::State& state) {
    radial::RadialParams p(1.0, 0.0);
    auto pot = radial::radial_potential(p);
    Complex z(5.0, 0.0);
    Spinor u0 = radial::Phi_kappa(p, z, 0.05);
    for (auto _ : state) {
        auto tr = integrate(pot, z, 0.05, u0, 2.0);
        benchmark::DoNotOptimize(tr.eval(2.0));
    }
}
BENCHMARK(BM_Integrate_radial);

static void BM_DenseEval(benchmark::State& state) {
    auto pot = DiracPotential::free_potential(Interval(-kInf, kInf));
    auto tr = integrate(pot, {20.0, 0.0}, 0.0, {{0, 0}, {1, 0}}, 5.0);
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tr.eval(x));
        x = x < 4.9 ? x + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_DenseEval);
