#include "proofblocks/core.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_set>

#include "proofblocks/error.hpp"

namespace proofblocks {

const Block* Question::find_block(const Tag& tag) const {
    auto it = std::find_if(blocks.begin(), blocks.end(),
                           [&](const Block& b) { return b.tag == tag; });
    return it == blocks.end() ? nullptr : &*it;
}

const Group* Question::find_group(const Tag& tag) const {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return g.tag == tag; });
    return it == groups.end() ? nullptr : &*it;
}

std::size_t Question::required_count() const {
    return static_cast<std::size_t>(std::count_if(
        blocks.begin(), blocks.end(), [](const Block& b) { return !b.is_distractor; }));
}

ExpandedGraph::ExpandedGraph(std::vector<Tag> nodes, std::vector<Edge> edges,
                             std::vector<std::vector<std::size_t>> contiguity_sets)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), sets_(std::move(contiguity_sets)) {
    const std::size_t n = nodes_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!index_.emplace(nodes_[i], i).second)
            throw std::invalid_argument("duplicate node tag '" + nodes_[i] + "'");
    }

    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    preds_.assign(n, {});
    succs_.assign(n, {});
    for (auto [u, v] : edges_) {
        if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
        preds_[v].push_back(u);
        succs_[u].push_back(v);
    }

    set_of_.assign(n, std::nullopt);
    for (std::size_t s = 0; s < sets_.size(); ++s) {
        auto& set = sets_[s];
        std::sort(set.begin(), set.end());
        if (set.empty()) throw std::invalid_argument("empty contiguity set");
        for (std::size_t m : set) {
            if (m >= n) throw std::invalid_argument("contiguity member out of range");
            if (set_of_[m]) throw std::invalid_argument("contiguity sets overlap");
            set_of_[m] = s;
        }
    }

    // Kahn's algorithm; anything left unprocessed lies on a cycle.
    std::vector<std::size_t> indegree(n);
    for (std::size_t v = 0; v < n; ++v) indegree[v] = preds_[v].size();
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < n; ++v)
        if (indegree[v] == 0) ready.push_back(v);
    std::size_t processed = 0;
    while (!ready.empty()) {
        std::size_t u = ready.back();
        ready.pop_back();
        ++processed;
        for (std::size_t v : succs_[u])
            if (--indegree[v] == 0) ready.push_back(v);
    }
    if (processed != n) {
        std::vector<Tag> cyclic;
        for (std::size_t v = 0; v < n; ++v)
            if (indegree[v] != 0) cyclic.push_back(nodes_[v]);
        throw CycleError(std::move(cyclic));
    }
}

std::optional<std::size_t> ExpandedGraph::index_of(const Tag& tag) const {
    auto it = index_.find(tag);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> ExpandedGraph::set_of(std::size_t node) const {
    return set_of_.at(node);
}

std::vector<std::pair<Tag, Tag>> ExpandedGraph::tag_edges() const {
    std::vector<std::pair<Tag, Tag>> out;
    out.reserve(edges_.size());
    for (auto [u, v] : edges_) out.emplace_back(nodes_[u], nodes_[v]);
    return out;
}

void validate(const Question& question) {
    std::unordered_set<Tag> seen;
    auto claim = [&](const Tag& tag, const char* kind) {
        if (tag.empty()) throw InvalidQuestionError(std::string("empty ") + kind + " tag");
        if (!seen.insert(tag).second)
            throw InvalidQuestionError("duplicate tag '" + tag + "'");
    };
    for (const auto& b : question.blocks) claim(b.tag, "block");
    for (const auto& g : question.groups) claim(g.tag, "group");

    auto check_refs = [&](const Tag& owner, const std::vector<Tag>& depends) {
        for (const auto& ref : depends) {
            if (const Block* b = question.find_block(ref)) {
                if (b->is_distractor)
                    throw DistractorDependencyError("'" + owner + "' depends on distractor '" +
                                                    ref + "'");
            } else if (!question.find_group(ref)) {
                throw InvalidQuestionError("'" + owner + "' depends on unknown tag '" + ref + "'");
            }
        }
    };
    for (const auto& b : question.blocks) {
        if (b.is_distractor && !b.depends.empty())
            throw DistractorDependencyError("distractor '" + b.tag + "' declares dependencies");
        check_refs(b.tag, b.depends);
        if (b.group) {
            const Group* g = question.find_group(*b.group);
            if (!g) throw InvalidQuestionError("block '" + b.tag + "' names unknown group");
            if (std::find(g->members.begin(), g->members.end(), b.tag) == g->members.end())
                throw InvalidQuestionError("block '" + b.tag + "' missing from its group");
        }
    }
    for (const auto& g : question.groups) {
        check_refs(g.tag, g.depends);
        if (g.members.empty()) throw InvalidQuestionError("group '" + g.tag + "' is empty");
        std::unordered_set<Tag> members;
        for (const auto& m : g.members) {
            if (question.find_group(m))
                throw InvalidQuestionError("group '" + g.tag + "' nests group '" + m + "'");
            const Block* b = question.find_block(m);
            if (!b) throw InvalidQuestionError("group '" + g.tag + "' lists unknown '" + m + "'");
            if (!members.insert(m).second)
                throw InvalidQuestionError("group '" + g.tag + "' lists '" + m + "' twice");
            if (b->group != g.tag)
                throw InvalidQuestionError("block '" + m + "' does not name group '" + g.tag + "'");
        }
    }
    if (question.required_count() == 0)
        throw InvalidQuestionError("question has no required blocks");
}

ExpandedGraph expand(const Question& question) {
    validate(question);

    std::vector<Tag> nodes;
    std::unordered_map<Tag, std::size_t> index;
    for (const auto& b : question.blocks) {
        if (b.is_distractor) continue;
        index.emplace(b.tag, nodes.size());
        nodes.push_back(b.tag);
    }

    // Required members of a group, or the block itself.
    auto targets = [&](const Tag& tag) {
        std::vector<std::size_t> out;
        if (const Group* g = question.find_group(tag)) {
            for (const auto& m : g->members)
                if (auto it = index.find(m); it != index.end()) out.push_back(it->second);
        } else if (auto it = index.find(tag); it != index.end()) {
            out.push_back(it->second);
        }
        return out;
    };

    std::vector<ExpandedGraph::Edge> edges;
    auto connect = [&](const Tag& dependent, const std::vector<Tag>& depends) {
        const auto after = targets(dependent);
        for (const auto& dep : depends)
            for (std::size_t u : targets(dep))
                for (std::size_t v : after) edges.emplace_back(u, v);
    };
    for (const auto& b : question.blocks) connect(b.tag, b.depends);
    for (const auto& g : question.groups) connect(g.tag, g.depends);

    std::vector<std::vector<std::size_t>> sets;
    for (const auto& g : question.groups) {
        auto members = targets(g.tag);
        if (!members.empty()) sets.push_back(std::move(members));
    }

    return ExpandedGraph(std::move(nodes), std::move(edges), std::move(sets));
}

bool is_valid_ordering(const ExpandedGraph& graph, std::span<const Tag> seq) {
    const std::size_t n = graph.size();
    if (seq.size() != n) return false;

    std::vector<std::size_t> position(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto idx = graph.index_of(seq[i]);
        if (!idx || position[*idx] != n) return false;
        position[*idx] = i;
    }
    for (auto [u, v] : graph.edges())
        if (position[u] >= position[v]) return false;
    for (const auto& set : graph.contiguity_sets()) {
        auto [lo, hi] = std::minmax_element(set.begin(), set.end(), [&](auto a, auto b) {
            return position[a] < position[b];
        });
        if (position[*hi] - position[*lo] + 1 != set.size()) return false;
    }
    return true;
}

std::vector<std::vector<Tag>> valid_orderings(const ExpandedGraph& graph,
                                              std::optional<std::size_t> limit) {
    const std::size_t n = graph.size();
    if (!limit && n > kMaxUnlimitedEnumeration) throw TooLargeError(n, kMaxUnlimitedEnumeration);

    std::vector<std::vector<Tag>> out;
    if (limit && *limit == 0) return out;

    const auto& sets = graph.contiguity_sets();
    std::vector<bool> placed(n, false);
    std::vector<std::size_t> missing_preds(n);
    for (std::size_t v = 0; v < n; ++v) missing_preds[v] = graph.predecessors(v).size();
    std::vector<std::size_t> remaining_in_set(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) remaining_in_set[s] = sets[s].size();
    std::vector<Tag> prefix;
    prefix.reserve(n);

    // Depth-first search trying nodes in author order; returns false once the
    // limit has been reached.
    std::function<bool(std::optional<std::size_t>)> extend =
        [&](std::optional<std::size_t> open) -> bool {
        if (prefix.size() == n) {
            out.push_back(prefix);
            return !limit || out.size() < *limit;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (placed[v] || missing_preds[v] != 0) continue;
            auto set = graph.set_of(v);
            if (open && set != open) continue;

            placed[v] = true;
            prefix.push_back(graph.nodes()[v]);
            for (std::size_t w : graph.successors(v)) --missing_preds[w];
            std::optional<std::size_t> next_open;
            if (set) {
                --remaining_in_set[*set];
                if (remaining_in_set[*set] != 0) next_open = set;
            }

            bool keep_going = extend(next_open);

            if (set) ++remaining_in_set[*set];
            for (std::size_t w : graph.successors(v)) ++missing_preds[w];
            prefix.pop_back();
            placed[v] = false;
            if (!keep_going) return false;
        }
        return true;
    };
    extend(std::nullopt);
    return out;
}

}  // namespace proofblocks
