// Microbenchmarks for the hot paths: closed-form evaluator operations now,
// group/transform/product kernels as those modules land.

#include <benchmark/benchmark.h>

#include "anstar/analytic.hpp"
#include "anstar/quadrature.hpp"

namespace {

anstar::GaussSum make_specimen() {
    anstar::Vec c(2), k(2), f(2);
    c << 0.3, -0.2;
    k << 0.7, 1.1;
    f << 1.2, -0.6;
    auto g = anstar::GaussSum::modulated_gaussian(2, c, k, f, anstar::cplx(1.1, -0.4));
    return g.times_affine(0, 2.0, -0.5);
}

void BM_GaussSumEval(benchmark::State& state) {
    const auto g = make_specimen();
    double p[2] = {0.4, -0.7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(g.eval(p));
        p[0] += 1e-9;
    }
}
BENCHMARK(BM_GaussSumEval);

void BM_GaussSumProduct(benchmark::State& state) {
    const auto g = make_specimen();
    for (auto _ : state) benchmark::DoNotOptimize(g * g);
}
BENCHMARK(BM_GaussSumProduct);

void BM_GaussSumFourier(benchmark::State& state) {
    const auto g = make_specimen();
    for (auto _ : state) benchmark::DoNotOptimize(g.partial_fourier(0, -1, 1.0));
}
BENCHMARK(BM_GaussSumFourier);

void BM_GaussLegendre(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(anstar::gauss_legendre(64));
}
BENCHMARK(BM_GaussLegendre);

}  // namespace

BENCHMARK_MAIN();
