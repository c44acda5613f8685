#include <vector>

#include "kernel_steps.hpp"
#include "proofblocks/error.hpp"
#include "proofblocks/kernels.hpp"

namespace proofblocks::kernels {

MaskGraph MaskGraph::from(const ExpandedGraph& graph) {
    if (graph.size() > kMaxExactNodes) throw TooLargeError(graph.size(), kMaxExactNodes);
    MaskGraph out;
    out.n = graph.size();
    out.preds.assign(out.n, 0);
    for (auto [u, v] : graph.edges()) out.preds[v] |= std::uint32_t{1} << u;
    for (const auto& set : graph.contiguity_sets()) {
        std::uint32_t members = 0;
        for (std::size_t m : set) members |= std::uint32_t{1} << m;
        out.groups.push_back(members);
    }
    return out;
}

std::uint64_t count_orderings_serial(const MaskGraph& graph) {
    const std::uint32_t full = graph.full();
    std::vector<std::uint64_t> counts(std::size_t{full} + 1, 0);
    counts[0] = 1;
    // Clearing a bit always yields a smaller mask, so numeric order suffices.
    for (std::uint32_t mask = 1; mask != 0 && mask <= full; ++mask)
        counts[mask] = detail::count_step(graph, counts, mask);
    return counts[full];
}

std::size_t max_lcs_serial(const MaskGraph& graph, std::span<const std::uint8_t> seq) {
    const std::uint32_t full = graph.full();
    const std::size_t width = seq.size() + 1;
    std::vector<std::int8_t> table((std::size_t{full} + 1) * width);
    std::fill(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(width), std::int8_t{0});
    for (std::uint32_t mask = 1; mask != 0 && mask <= full; ++mask)
        detail::lcs_step(graph, seq, table, mask);
    const std::int8_t best = table[std::size_t{full} * width + seq.size()];
    return best < 0 ? 0 : static_cast<std::size_t>(best);
}

}  // namespace proofblocks::kernels
