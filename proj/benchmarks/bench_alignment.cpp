#include <benchmark/benchmark.h>

#include "manifold_align/alignment.hpp"
#include "manifold_align/kernels.hpp"
#include "manifold_align/neighbors.hpp"
#include "manifold_align/synthgen.hpp"

namespace ma = manifold_align;
namespace synth = manifold_align::synth;

namespace {

constexpr std::size_t kDim = 20;

void BM_PairwiseDistances(benchmark::State& state) {
    const auto x = synth::gaussian_spot(static_cast<std::size_t>(state.range(0)), kDim, 1);
    for (auto _ : state) benchmark::DoNotOptimize(ma::pairwise_distances(x));
}
BENCHMARK(BM_PairwiseDistances)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_KnnGraph(benchmark::State& state) {
    const auto d = ma::pairwise_distances(synth::gaussian_spot(static_cast<std::size_t>(state.range(0)), kDim, 1));
    const auto k = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(ma::knn_graph(d, k));
}
BENCHMARK(BM_KnnGraph)->Args({1000, 15})->Args({1000, 100})->Unit(benchmark::kMillisecond);

void BM_ManifoldKernel(benchmark::State& state) {
    const auto d = ma::pairwise_distances(synth::gaussian_spot(static_cast<std::size_t>(state.range(0)), kDim, 1));
    const auto k = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(ma::manifold_kernel(d, k));
}
BENCHMARK(BM_ManifoldKernel)->Args({1000, 15})->Args({1000, 100})->Unit(benchmark::kMillisecond);

void BM_MkaFast(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    const auto kx = ma::manifold_kernel(synth::gaussian_spot(n, kDim, 1), k);
    const auto ky = ma::manifold_kernel(synth::gaussian_spot(n, kDim, 2), k);
    for (auto _ : state) benchmark::DoNotOptimize(ma::mka_fast(kx, ky));
}
BENCHMARK(BM_MkaFast)->Args({500, 15})->Args({1000, 15})->Args({2000, 15})->Args({1000, 100});

void BM_MkaNaive(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    const auto kx = ma::manifold_kernel(synth::gaussian_spot(n, kDim, 1), k);
    const auto ky = ma::manifold_kernel(synth::gaussian_spot(n, kDim, 2), k);
    for (auto _ : state) benchmark::DoNotOptimize(ma::mka_naive(kx, ky));
}
BENCHMARK(BM_MkaNaive)->Args({500, 15})->Args({1000, 15})->Args({2000, 15})->Unit(benchmark::kMillisecond);

void BM_Hsic(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = ma::linear_kernel(synth::gaussian_spot(n, kDim, 1));
    const auto l = ma::linear_kernel(synth::gaussian_spot(n, kDim, 2));
    for (auto _ : state) benchmark::DoNotOptimize(ma::hsic(k, l));
}
BENCHMARK(BM_Hsic)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
