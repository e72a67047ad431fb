#include <benchmark/benchmark.h>

#include "dirac/perturbed_radial.hpp"
#include "dirac/weyl.hpp"

using namespace dirac;

static void BM_MPlus_free(benchmark::State& state) {
    auto pot = DiracPotential::free_potential(Interval(0.0, kInf));
    auto scheme = weyl::TruncationScheme::toward(3.0, 8.0, 6);
    for (auto _ : state)
        benchmark::DoNotOptimize(weyl::m_plus(pot, 1.0, {0.0, 2.0}, scheme));
}
BENCHMARK(BM_MPlus_free);

static void BM_NeumannSolve(benchmark::State& state) {
    auto P = perturbed::Perturbation::am_bump(0.2, 0.4, 1.0);
    for (auto _ : state) {
        auto sol = perturbed::neumann_solve(0.5, P, {2.0, 1.0}, 1.0, 1e-12,
                                            static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(sol.eval_scaled(0.9));
    }
}
BENCHMARK(BM_NeumannSolve)->Arg(24)->Arg(48);

static void BM_StieltjesWindow(benchmark::State& state) {
    radial::RadialParams p(0.0, 0.0);
    auto M = [&p](Complex z) { return radial::M_kappa(p, z); };
    std::vector<double> ladder{1e-1, 3e-2, 1e-2, 3e-3};
    for (auto _ : state) {
        auto est = weyl::stieltjes_invert(M, 1.0, 2.0, ladder, 9);
        benchmark::DoNotOptimize(est.window_mass);
    }
}
BENCHMARK(BM_StieltjesWindow);

BENCHMARK_MAIN();
