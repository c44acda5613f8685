#pragma once

// Exact subset dynamic programs behind count_orderings and edit_distance.
//
// A DP state is the set of placed nodes. Under the contiguity rule at most one
// contiguity set can be partially placed in any reachable state, so the open
// group is a function of the mask and needs no separate coordinate. Every
// kernel comes in two flavours: a serial reference that sweeps masks in
// increasing numeric order, and an OpenMP version that sweeps popcount layers
// with the masks of one layer processed in parallel. Both use the same pull
// recurrence and must agree exactly.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "proofblocks/core.hpp"

namespace proofblocks::kernels {

inline constexpr std::size_t kMaxExactNodes = 20;

// Bitmask view of an ExpandedGraph with at most kMaxExactNodes nodes.
struct MaskGraph {
    std::size_t n = 0;
    std::vector<std::uint32_t> preds;   // predecessor mask per node
    std::vector<std::uint32_t> groups;  // member mask per contiguity set

    // Throws TooLargeError above kMaxExactNodes.
    static MaskGraph from(const ExpandedGraph& graph);

    std::uint32_t full() const noexcept {
        return n == 32 ? ~0u : ((std::uint32_t{1} << n) - 1);
    }

    // The contiguity set left partially placed by `placed`, or -1.
    int open_group(std::uint32_t placed) const noexcept {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            const std::uint32_t inside = placed & groups[g];
            if (inside != 0 && inside != groups[g]) return static_cast<int>(g);
        }
        return -1;
    }

    // Whether node v may be appended to a valid prefix whose node set is `placed`.
    bool placeable(std::uint32_t placed, std::size_t v) const noexcept {
        const std::uint32_t bit = std::uint32_t{1} << v;
        if (placed & bit) return false;
        if (preds[v] & ~placed) return false;
        const int open = open_group(placed);
        return open < 0 || (groups[static_cast<std::size_t>(open)] & bit);
    }
};

std::uint64_t count_orderings_serial(const MaskGraph& graph);
std::uint64_t count_orderings_parallel(const MaskGraph& graph);

// Maximum LCS between `seq` and any valid ordering of the graph. `seq` holds
// node indices, each at most once.
std::size_t max_lcs_serial(const MaskGraph& graph, std::span<const std::uint8_t> seq);
std::size_t max_lcs_parallel(const MaskGraph& graph, std::span<const std::uint8_t> seq);

// Graphs at least this large go to the parallel kernels by default.
inline constexpr std::size_t kParallelThreshold = 12;

}  // namespace proofblocks::kernels
