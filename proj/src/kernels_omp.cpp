#include <bit>
#include <vector>

#include "kernel_steps.hpp"
#include "proofblocks/kernels.hpp"

namespace proofblocks::kernels {
namespace {

// Masks over n bits grouped by popcount, each layer in increasing order.
std::vector<std::vector<std::uint32_t>> popcount_layers(std::size_t n) {
    std::vector<std::vector<std::uint32_t>> layers(n + 1);
    const std::uint32_t full = n == 0 ? 0 : ((std::uint32_t{1} << n) - 1);
    for (std::uint32_t mask = 0;; ++mask) {
        layers[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
        if (mask == full) break;
    }
    return layers;
}

}  // namespace

std::uint64_t count_orderings_parallel(const MaskGraph& graph) {
    const std::uint32_t full = graph.full();
    std::vector<std::uint64_t> counts(std::size_t{full} + 1, 0);
    counts[0] = 1;
    const auto layers = popcount_layers(graph.n);
    for (std::size_t k = 1; k < layers.size(); ++k) {
        const auto& layer = layers[k];
        const auto size = static_cast<std::ptrdiff_t>(layer.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < size; ++i)
            counts[layer[static_cast<std::size_t>(i)]] =
                detail::count_step(graph, counts, layer[static_cast<std::size_t>(i)]);
    }
    return counts[full];
}

std::size_t max_lcs_parallel(const MaskGraph& graph, std::span<const std::uint8_t> seq) {
    const std::uint32_t full = graph.full();
    const std::size_t width = seq.size() + 1;
    std::vector<std::int8_t> table((std::size_t{full} + 1) * width);
    std::fill(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(width), std::int8_t{0});
    const auto layers = popcount_layers(graph.n);
    for (std::size_t k = 1; k < layers.size(); ++k) {
        const auto& layer = layers[k];
        const auto size = static_cast<std::ptrdiff_t>(layer.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < size; ++i)
            detail::lcs_step(graph, seq, table, layer[static_cast<std::size_t>(i)]);
    }
    const std::int8_t best = table[std::size_t{full} * width + seq.size()];
    return best < 0 ? 0 : static_cast<std::size_t>(best);
}

}  // namespace proofblocks::kernels
