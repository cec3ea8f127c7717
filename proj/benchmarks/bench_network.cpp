#include "fimstat/data/sample_batch.hpp"
#include "fimstat/netsim/network.hpp"

#include <benchmark/benchmark.h>

using namespace fimstat;
using meanfield::Activation;
using meanfield::NetworkShape;

static void BM_Forward(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto shape = NetworkShape::uniform(3, m, 10, 2.0, 0.1, Activation::relu());
    const auto p = netsim::sample_network(shape, 1);
    const auto x = data::gaussian_batch(100, m, 2).inputs;
    for (auto _ : state) benchmark::DoNotOptimize(netsim::forward(p, x));
}
BENCHMARK(BM_Forward)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_Backward(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto shape = NetworkShape::uniform(3, m, 10, 2.0, 0.1, Activation::relu());
    const auto p = netsim::sample_network(shape, 1);
    const auto rec = netsim::forward(p, data::gaussian_batch(100, m, 2).inputs);
    for (auto _ : state) benchmark::DoNotOptimize(netsim::backward(p, rec));
}
BENCHMARK(BM_Backward)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_LossGradient(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto shape = NetworkShape::uniform(4, m, 10, 2.0, 0.1, Activation::relu());
    const auto p = netsim::sample_network(shape, 1);
    const auto x = data::gaussian_batch(100, m, 2).inputs;
    const auto y = data::gaussian_batch(100, 10, 3).inputs;
    for (auto _ : state) benchmark::DoNotOptimize(netsim::loss_and_gradient(p, x, y));
}
BENCHMARK(BM_LossGradient)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_Sample(benchmark::State& state) {
    const auto shape = NetworkShape::uniform(3, static_cast<int>(state.range(0)), 1, 1.0, 0.1, Activation::linear());
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(netsim::sample_network(shape, ++seed));
}
BENCHMARK(BM_Sample)->Arg(1024)->Unit(benchmark::kMillisecond);
