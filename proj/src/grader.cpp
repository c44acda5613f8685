#include "proofblocks/grader.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

#include "proofblocks/error.hpp"
#include "proofblocks/kernels.hpp"

namespace proofblocks {

Rational::Rational(std::uint64_t numerator, std::uint64_t denominator) {
    if (denominator == 0) throw std::invalid_argument("zero denominator");
    const std::uint64_t g = std::gcd(numerator, denominator);
    num_ = numerator / g;
    den_ = denominator / g;
}

std::string_view to_string(GradeStatus status) {
    switch (status) {
        case GradeStatus::correct: return "correct";
        case GradeStatus::wrong_at_line: return "wrong_at_line";
        case GradeStatus::incomplete: return "incomplete";
    }
    return "unknown";
}

std::optional<std::size_t> first_failure(const ExpandedGraph& graph, std::span<const Tag> seq) {
    const auto& sets = graph.contiguity_sets();
    std::vector<bool> placed(graph.size(), false);
    std::vector<std::size_t> remaining(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) remaining[s] = sets[s].size();
    std::optional<std::size_t> open;

    for (std::size_t i = 0; i < seq.size(); ++i) {
        const auto node = graph.index_of(seq[i]);
        if (!node || placed[*node]) return i + 1;
        for (std::size_t u : graph.predecessors(*node))
            if (!placed[u]) return i + 1;
        const auto set = graph.set_of(*node);
        if (open && set != open) return i + 1;

        placed[*node] = true;
        if (set) {
            open = --remaining[*set] == 0 ? std::nullopt : set;
        }
    }
    return std::nullopt;
}

namespace {

std::size_t max_lcs(const ExpandedGraph& graph, std::span<const std::uint8_t> kept) {
    const auto masks = kernels::MaskGraph::from(graph);
    return graph.size() >= kernels::kParallelThreshold ? kernels::max_lcs_parallel(masks, kept)
                                                       : kernels::max_lcs_serial(masks, kept);
}

}  // namespace

std::size_t edit_distance(const ExpandedGraph& graph, std::span<const Tag> seq) {
    const std::size_t n = graph.size();
    if (n > kernels::kMaxExactNodes) throw TooLargeError(n, kernels::kMaxExactNodes);

    // First occurrences of required tags; everything else must be deleted.
    std::vector<bool> seen(n, false);
    std::vector<std::uint8_t> kept;
    for (const auto& tag : seq) {
        auto node = graph.index_of(tag);
        if (!node || seen[*node]) continue;
        seen[*node] = true;
        kept.push_back(static_cast<std::uint8_t>(*node));
    }
    const std::size_t lcs = max_lcs(graph, kept);
    return (seq.size() - kept.size()) + (kept.size() - lcs) + (n - lcs);
}

namespace {

Rational score_from_distance(std::size_t n, std::size_t distance) {
    if (n == 0) return distance == 0 ? Rational(1, 1) : Rational(0, 1);
    if (distance >= n) return Rational(0, 1);
    return Rational(n - distance, n);
}

}  // namespace

Rational score(const ExpandedGraph& graph, std::span<const Tag> seq) {
    return score_from_distance(graph.size(), edit_distance(graph, seq));
}

std::uint64_t count_orderings(const ExpandedGraph& graph) {
    const auto masks = kernels::MaskGraph::from(graph);
    return graph.size() >= kernels::kParallelThreshold ? kernels::count_orderings_parallel(masks)
                                                       : kernels::count_orderings_serial(masks);
}

GradeOutcome grade(const Question& question, const Submission& submission) {
    return grade(question, expand(question), submission.ordering);
}

GradeOutcome grade(const Question& question, const ExpandedGraph& graph,
                   std::span<const Tag> ordering) {
    const auto& options = question.options;
    const std::size_t n = graph.size();
    GradeOutcome outcome;

    if (is_valid_ordering(graph, ordering)) {
        outcome.status = GradeStatus::correct;
        outcome.edit_distance = 0;
        outcome.score = Rational(1, 1);
        return outcome;
    }

    // With feedback disabled the failing line is withheld, and an incorrect
    // attempt is reported without a line.
    if (options.feedback_mode == FeedbackMode::first_failure) {
        outcome.first_failure = first_failure(graph, ordering);
        outcome.status =
            outcome.first_failure ? GradeStatus::wrong_at_line : GradeStatus::incomplete;
    } else {
        outcome.status = GradeStatus::incomplete;
    }

    if (n <= kernels::kMaxExactNodes) {
        outcome.edit_distance = edit_distance(graph, ordering);
    } else if (options.scoring_mode == ScoringMode::binary) {
        // Delete everything, insert everything.
        outcome.edit_distance = ordering.size() + n;
    } else {
        throw TooLargeError(n, kernels::kMaxExactNodes);
    }

    outcome.score = options.scoring_mode == ScoringMode::binary
                        ? Rational(0, 1)
                        : score_from_distance(n, outcome.edit_distance);
    return outcome;
}

}  // namespace proofblocks
