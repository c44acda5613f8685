#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "proofblocks/core.hpp"

namespace proofblocks {

// Non-negative rational kept in lowest terms.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::uint64_t numerator, std::uint64_t denominator);

    std::uint64_t numerator() const noexcept { return num_; }
    std::uint64_t denominator() const noexcept { return den_; }
    double value() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<unsigned __int128>(a.num_) * b.den_ <
               static_cast<unsigned __int128>(b.num_) * a.den_;
    }

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

enum class GradeStatus { correct, wrong_at_line, incomplete };

std::string_view to_string(GradeStatus status);

struct GradeOutcome {
    GradeStatus status = GradeStatus::incomplete;
    std::optional<std::size_t> first_failure;  // 1-based line
    std::size_t edit_distance = 0;
    Rational score;

    friend bool operator==(const GradeOutcome&, const GradeOutcome&) = default;
};

// 1-based index of the first line that cannot be placed by the left-to-right
// simulation, or nullopt when every line is placeable.
std::optional<std::size_t> first_failure(const ExpandedGraph& graph, std::span<const Tag> seq);

// Minimum number of single-block deletions plus insertions turning seq into a
// valid ordering. Only the first occurrence of each required tag can be kept.
// Throws TooLargeError above kernels::kMaxExactNodes.
std::size_t edit_distance(const ExpandedGraph& graph, std::span<const Tag> seq);

// max(0, (n - d) / n).
Rational score(const ExpandedGraph& graph, std::span<const Tag> seq);

// Number of valid orderings. Throws TooLargeError above kernels::kMaxExactNodes.
std::uint64_t count_orderings(const ExpandedGraph& graph);

GradeOutcome grade(const Question& question, const Submission& submission);
GradeOutcome grade(const Question& question, const ExpandedGraph& graph,
                   std::span<const Tag> ordering);

}  // namespace proofblocks
