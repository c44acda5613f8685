#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "proofblocks/core.hpp"

namespace proofblocks::linter {

enum class Severity { error, warning, info };

std::string_view to_string(Severity severity);

// Finding codes:
//   E03  dependency cycle
//   E04  dependency on a distractor
//   E08  dependencies and subproof contiguity admit no ordering at all
//   W01  over-constrained: exactly one valid ordering and at least 4 blocks
//   W02  redundant block-to-block dependency implied by other edges
//   W03  dead-end group: a member waits on an outside block the group
//        itself does not depend on, so starting the group can strand a student
//   W04  a distractor repeats the text of a required block
//   I01  exact number of valid orderings
//   I02  too many blocks to count orderings exactly
struct LintFinding {
    Severity severity = Severity::info;
    std::string code;
    std::string subject;  // block or group tag; empty for the whole question
    std::string message;

    friend bool operator==(const LintFinding&, const LintFinding&) = default;
};

// Blocks below this size are never reported as over-constrained.
inline constexpr std::size_t kOverConstrainedMinBlocks = 4;

std::vector<LintFinding> lint(const Question& question);

// Edges (by node index) whose endpoints stay ordered through other edges.
std::vector<ExpandedGraph::Edge> transitive_edges(const ExpandedGraph& graph);

bool has_errors(const std::vector<LintFinding>& findings);

}  // namespace proofblocks::linter
