#include "fimstat/data/sample_batch.hpp"
#include "fimstat/netsim/network.hpp"
#include "fimstat/spectral/dual_gram.hpp"
#include "fimstat/spectral/jacobi.hpp"

#include <benchmark/benchmark.h>

using namespace fimstat;
using meanfield::Activation;
using meanfield::NetworkShape;

namespace {

netsim::GradientBatch batch(int width, int outputs, int samples) {
    const auto shape = NetworkShape::uniform(3, width, outputs, 1.0, 0.1, Activation::linear());
    const auto p = netsim::sample_network(shape, 1);
    return netsim::backward(p, netsim::forward(p, data::gaussian_batch(samples, width, 2).inputs));
}

}  // namespace

static void BM_DualGram(benchmark::State& state) {
    const auto b = batch(static_cast<int>(state.range(0)), 1, static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(spectral::build_dual_gram(b));
}
BENCHMARK(BM_DualGram)->Args({512, 100})->Args({512, 1000})->Args({1024, 100})->Unit(benchmark::kMillisecond);

static void BM_Eigenvalues(benchmark::State& state) {
    const auto g = spectral::build_dual_gram(batch(256, 1, static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(spectral::eigenvalues(g));
}
BENCHMARK(BM_Eigenvalues)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_Jacobi(benchmark::State& state) {
    const auto g = spectral::build_dual_gram(batch(64, 1, static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(spectral::jacobi_eigenvalues(g.matrix));
}
BENCHMARK(BM_Jacobi)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
