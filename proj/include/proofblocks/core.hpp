#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace proofblocks {

using Tag = std::string;

struct Block {
    Tag tag;
    std::string text;
    bool is_distractor = false;
    std::vector<Tag> depends;
    std::optional<Tag> group;

    friend bool operator==(const Block&, const Block&) = default;
};

// A subproof: its members must appear contiguously in a correct ordering.
struct Group {
    Tag tag;
    std::vector<Tag> depends;
    std::vector<Tag> members;

    friend bool operator==(const Group&, const Group&) = default;
};

enum class FeedbackMode { first_failure, none };
enum class ScoringMode { binary, edit_distance };

struct GradingOptions {
    FeedbackMode feedback_mode = FeedbackMode::first_failure;
    ScoringMode scoring_mode = ScoringMode::edit_distance;

    friend bool operator==(const GradingOptions&, const GradingOptions&) = default;
};

struct Question {
    std::string id;
    std::string prompt;
    std::vector<Block> blocks;  // author order
    std::vector<Group> groups;
    GradingOptions options;

    const Block* find_block(const Tag& tag) const;
    const Group* find_group(const Tag& tag) const;
    std::size_t required_count() const;

    friend bool operator==(const Question&, const Question&) = default;
};

struct Submission {
    std::string question_id;
    std::vector<Tag> ordering;

    friend bool operator==(const Submission&, const Submission&) = default;
};

// Precedence DAG over the required blocks plus one contiguity set per group.
//
// Nodes are numbered in author order; every index-based accessor refers to
// that numbering. Edges are stored sorted and without duplicates.
class ExpandedGraph {
public:
    using Edge = std::pair<std::size_t, std::size_t>;

    ExpandedGraph() = default;

    // Builds a graph from explicit parts. Throws CycleError when the edges are
    // cyclic and std::invalid_argument on out-of-range indices, duplicate
    // tags, or overlapping contiguity sets.
    ExpandedGraph(std::vector<Tag> nodes, std::vector<Edge> edges,
                  std::vector<std::vector<std::size_t>> contiguity_sets);

    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<Tag>& nodes() const noexcept { return nodes_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<std::vector<std::size_t>>& contiguity_sets() const noexcept {
        return sets_;
    }

    std::optional<std::size_t> index_of(const Tag& tag) const;
    const std::vector<std::size_t>& predecessors(std::size_t node) const {
        return preds_.at(node);
    }
    const std::vector<std::size_t>& successors(std::size_t node) const {
        return succs_.at(node);
    }
    // Index into contiguity_sets() for the node, if it belongs to one.
    std::optional<std::size_t> set_of(std::size_t node) const;

    // Edges as tag pairs, for reporting.
    std::vector<std::pair<Tag, Tag>> tag_edges() const;

    friend bool operator==(const ExpandedGraph& a, const ExpandedGraph& b) {
        return a.nodes_ == b.nodes_ && a.edges_ == b.edges_ && a.sets_ == b.sets_;
    }

private:
    std::vector<Tag> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> sets_;
    std::unordered_map<Tag, std::size_t> index_;
    std::vector<std::vector<std::size_t>> preds_;
    std::vector<std::vector<std::size_t>> succs_;
    std::vector<std::optional<std::size_t>> set_of_;
};

// Checks the structural invariants of a question (tags, references, groups,
// at least one required block). Throws InvalidQuestionError or
// DistractorDependencyError.
void validate(const Question& question);

// Expands block and group dependencies into per-block precedence edges.
// Throws CycleError, DistractorDependencyError, or InvalidQuestionError.
ExpandedGraph expand(const Question& question);

// True iff seq is a permutation of the nodes that respects every edge and
// keeps every contiguity set in consecutive positions.
bool is_valid_ordering(const ExpandedGraph& graph, std::span<const Tag> seq);

inline constexpr std::size_t kMaxUnlimitedEnumeration = 10;

// All valid orderings in lexicographic order of author position. Without a
// limit the graph may have at most kMaxUnlimitedEnumeration nodes.
std::vector<std::vector<Tag>> valid_orderings(
    const ExpandedGraph& graph, std::optional<std::size_t> limit = std::nullopt);

}  // namespace proofblocks
