#pragma once

// Per-mask pull steps shared by the serial and OpenMP kernels.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>

#include "proofblocks/kernels.hpp"

namespace proofblocks::kernels::detail {

inline std::uint64_t count_step(const MaskGraph& g, std::span<const std::uint64_t> counts,
                                std::uint32_t mask) {
    std::uint64_t total = 0;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
        const auto v = static_cast<std::size_t>(std::countr_zero(rest));
        const std::uint32_t prev = mask & ~(std::uint32_t{1} << v);
        if (counts[prev] != 0 && g.placeable(prev, v)) total += counts[prev];
    }
    return total;
}

// Fills row (m + 1 entries) for `mask`. table holds rows for all smaller
// popcounts. -1 marks an unreachable state.
inline void lcs_step(const MaskGraph& g, std::span<const std::uint8_t> seq,
                     std::span<std::int8_t> table, std::uint32_t mask) {
    const std::size_t width = seq.size() + 1;
    std::int8_t* row = table.data() + std::size_t{mask} * width;
    std::fill(row, row + width, std::int8_t{-1});

    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
        const auto v = static_cast<std::size_t>(std::countr_zero(rest));
        const std::uint32_t prev = mask & ~(std::uint32_t{1} << v);
        const std::int8_t* from = table.data() + std::size_t{prev} * width;
        if (from[0] < 0 || !g.placeable(prev, v)) continue;

        row[0] = std::max<std::int8_t>(row[0], 0);
        for (std::size_t j = 1; j < width; ++j) {
            const std::int8_t match = seq[j - 1] == v ? 1 : 0;
            row[j] = std::max({row[j], from[j], static_cast<std::int8_t>(from[j - 1] + match)});
        }
    }
    if (row[0] < 0) return;
    for (std::size_t j = 1; j < width; ++j) row[j] = std::max(row[j], row[j - 1]);
}

}  // namespace proofblocks::kernels::detail
