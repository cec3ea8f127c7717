#include "fimstat/meanfield/kernels.hpp"
#include "fimstat/meanfield/macro_state.hpp"

#include <benchmark/benchmark.h>

using namespace fimstat::meanfield;

static void BM_KernelClosedForm(benchmark::State& state) {
    const auto act = Activation::erf();
    double b = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_I_phi(act, 1.3, b));
        b = b < 1.0 ? b + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_KernelClosedForm);

static void BM_KernelQuadrature(benchmark::State& state) {
    const auto act = Activation::tanh();
    double b = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_I_phi(act, 1.3, b));
        b = b < 1.0 ? b + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_KernelQuadrature);

static void BM_Recurrences(benchmark::State& state) {
    const auto shape = NetworkShape::uniform(static_cast<int>(state.range(0)), 512, 10, 3.0, 0.64, Activation::tanh());
    for (auto _ : state) benchmark::DoNotOptimize(solve_macro_state(shape));
}
BENCHMARK(BM_Recurrences)->Arg(3)->Arg(10);
