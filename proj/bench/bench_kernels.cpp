// Serial reference vs OpenMP layer-parallel subset DP kernels.
//
//   ./build/bench/pb_bench --benchmark_filter=Lcs
//   OMP_NUM_THREADS=8 ./build/bench/pb_bench

#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "proofblocks/kernels.hpp"

namespace k = proofblocks::kernels;

namespace {

// Sparse graphs keep most masks reachable, which is the expensive case.
k::MaskGraph make_graph(std::size_t n) {
    gen::Rng rng(1000 + n);
    return k::MaskGraph::from(gen::random_graph(rng, n, 2, 0.1));
}

std::vector<std::uint8_t> make_seq(std::size_t n) {
    gen::Rng rng(2000 + n);
    std::vector<std::uint8_t> seq(n);
    std::iota(seq.begin(), seq.end(), std::uint8_t{0});
    std::shuffle(seq.begin(), seq.end(), rng);
    return seq;
}

template <std::uint64_t (*Count)(const k::MaskGraph&)>
void BM_Count(benchmark::State& state) {
    const auto g = make_graph(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Count(g));
}

template <std::size_t (*Lcs)(const k::MaskGraph&, std::span<const std::uint8_t>)>
void BM_Lcs(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = make_graph(n);
    const auto seq = make_seq(n);
    for (auto _ : state) benchmark::DoNotOptimize(Lcs(g, seq));
}

}  // namespace

BENCHMARK(BM_Count<k::count_orderings_serial>)->Name("Count/serial")->DenseRange(14, 20, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Count<k::count_orderings_parallel>)->Name("Count/parallel")->DenseRange(14, 20, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Lcs<k::max_lcs_serial>)->Name("Lcs/serial")->DenseRange(14, 20, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lcs<k::max_lcs_parallel>)->Name("Lcs/parallel")->DenseRange(14, 20, 2)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
