#include "proofblocks/linter.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "proofblocks/error.hpp"
#include "proofblocks/grader.hpp"
#include "proofblocks/kernels.hpp"

namespace proofblocks::linter {

std::string_view to_string(Severity severity) {
    switch (severity) {
        case Severity::error: return "error";
        case Severity::warning: return "warning";
        case Severity::info: return "info";
    }
    return "unknown";
}

bool has_errors(const std::vector<LintFinding>& findings) {
    return std::any_of(findings.begin(), findings.end(),
                       [](const auto& f) { return f.severity == Severity::error; });
}

namespace {

// reach[u][v]: v is reachable from u by a path of one or more edges.
std::vector<std::vector<bool>> reachability(const ExpandedGraph& graph) {
    const std::size_t n = graph.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack(graph.successors(s).begin(), graph.successors(s).end());
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            if (reach[s][v]) continue;
            reach[s][v] = true;
            for (auto w : graph.successors(v)) stack.push_back(w);
        }
    }
    return reach;
}

std::string normalized(std::string_view text) {
    std::string out;
    bool space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            space = !out.empty();
            continue;
        }
        if (space) out += ' ';
        space = false;
        out += c;
    }
    return out;
}

}  // namespace

std::vector<ExpandedGraph::Edge> transitive_edges(const ExpandedGraph& graph) {
    const auto reach = reachability(graph);
    std::vector<ExpandedGraph::Edge> out;
    for (auto [u, v] : graph.edges()) {
        const auto& next = graph.successors(u);
        if (std::any_of(next.begin(), next.end(),
                        [&, v = v](std::size_t w) { return w != v && reach[w][v]; }))
            out.emplace_back(u, v);
    }
    return out;
}

std::vector<LintFinding> lint(const Question& question) {
    std::vector<LintFinding> findings;
    auto add = [&](Severity s, std::string code, std::string subject, std::string message) {
        findings.push_back({s, std::move(code), std::move(subject), std::move(message)});
    };

    ExpandedGraph graph;
    try {
        graph = expand(question);
    } catch (const CycleError& e) {
        add(Severity::error, "E03", e.tags().empty() ? "" : e.tags().front(), e.what());
        return findings;
    } catch (const DistractorDependencyError& e) {
        add(Severity::error, "E04", "", e.what());
        return findings;
    } catch (const InvalidQuestionError& e) {
        add(Severity::error, "E00", "", e.what());
        return findings;
    }

    const std::size_t n = graph.size();
    const auto& tags = graph.nodes();

    std::optional<std::uint64_t> count;
    if (n <= kernels::kMaxExactNodes) count = count_orderings(graph);

    if (count == 0u)
        add(Severity::error, "E08", "",
            "no ordering satisfies the dependencies together with subproof contiguity");

    if (count == 1u && n >= kOverConstrainedMinBlocks)
        add(Severity::warning, "W01", "",
            "only the authored order is accepted; check whether every dependency is logical");

    // Only direct block-to-block declarations; group depends routinely imply
    // edges that are also reachable through the group's internal chain.
    std::set<ExpandedGraph::Edge> declared;
    for (const auto& b : question.blocks) {
        if (b.is_distractor) continue;
        const auto v = graph.index_of(b.tag);
        for (const auto& dep : b.depends)
            if (auto u = graph.index_of(dep); u && v) declared.emplace(*u, *v);
    }
    for (auto [u, v] : transitive_edges(graph)) {
        if (!declared.count({u, v})) continue;
        add(Severity::warning, "W02", tags[v],
            "'" + tags[v] + "' depends on '" + tags[u] + "', which is already implied");
    }

    const auto reach = reachability(graph);
    for (const auto& set : graph.contiguity_sets()) {
        for (auto m : set) {
            for (auto x : graph.predecessors(m)) {
                if (std::binary_search(set.begin(), set.end(), x)) continue;
                const bool strands = std::any_of(set.begin(), set.end(), [&](std::size_t other) {
                    return other != m && !reach[x][other];
                });
                if (!strands) continue;
                std::string group = question.find_block(tags[m])->group.value_or("");
                add(Severity::warning, "W03", tags[m],
                    "'" + tags[m] + "' in group '" + group + "' depends on outside block '" +
                        tags[x] + "' that the group does not depend on");
            }
        }
    }

    for (const auto& d : question.blocks) {
        if (!d.is_distractor) continue;
        const auto text = normalized(d.text);
        for (const auto& b : question.blocks) {
            if (b.is_distractor || normalized(b.text) != text) continue;
            add(Severity::warning, "W04", d.tag,
                "distractor '" + d.tag + "' has the same text as required block '" + b.tag + "'");
        }
    }

    if (count) {
        add(Severity::info, "I01", "", std::to_string(*count) + " valid ordering" +
                                           (*count == 1 ? "" : "s"));
    } else {
        add(Severity::info, "I02", "",
            std::to_string(n) + " required blocks; ordering count skipped above " +
                std::to_string(kernels::kMaxExactNodes));
    }
    return findings;
}

}  // namespace proofblocks::linter
