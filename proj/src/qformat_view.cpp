#include <algorithm>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "proofblocks/error.hpp"
#include "proofblocks/qformat.hpp"

namespace proofblocks::qformat {

Submission parse_submission(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedDocumentError(e.what(), e.byte);
    }
    if (!doc.is_object()) throw MalformedDocumentError("submission must be a JSON object", 0);

    Submission sub;
    if (auto it = doc.find("question_id"); it != doc.end()) {
        if (!it->is_string()) throw MalformedDocumentError("question_id must be a string", 0);
        sub.question_id = it->get<std::string>();
    }
    auto it = doc.find("ordering");
    if (it == doc.end() || !it->is_array())
        throw MalformedDocumentError("ordering must be an array of strings", 0);
    for (const auto& item : *it) {
        if (!item.is_string()) throw MalformedDocumentError("ordering must be an array of strings", 0);
        sub.ordering.push_back(item.get<std::string>());
    }
    return sub;
}

std::uint64_t stable_hash(std::string_view text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<std::size_t> shuffled_order(const Question& question, std::uint64_t seed) {
    std::vector<std::size_t> order(question.blocks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    SplitMix64 rng(seed ^ stable_hash(question.id));
    for (std::size_t i = order.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.next() % i);
        std::swap(order[i - 1], order[j]);
    }
    return order;
}

std::string render_id(std::size_t position, std::size_t block_count) {
    std::size_t width = 1;
    for (std::size_t v = block_count > 0 ? block_count - 1 : 0; v >= 10; v /= 10) ++width;
    width = std::max<std::size_t>(width, 2);
    std::string digits = std::to_string(position);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return digits;
}

StudentView render_student_view(const Question& question, std::uint64_t seed) {
    StudentView view;
    view.question_id = question.id;
    view.seed = seed;
    view.prompt = question.prompt;
    const auto order = shuffled_order(question, seed);
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        view.blocks.push_back({render_id(pos, order.size()), question.blocks[order[pos]].text});
    return view;
}

std::vector<Tag> resolve_ordering(const Question& question, std::uint64_t seed,
                                  std::span<const std::string> render_ids) {
    const auto order = shuffled_order(question, seed);
    std::unordered_map<std::string, const Tag*> by_id;
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        by_id.emplace(render_id(pos, order.size()), &question.blocks[order[pos]].tag);

    std::vector<Tag> tags;
    tags.reserve(render_ids.size());
    for (const auto& id : render_ids) {
        auto it = by_id.find(id);
        tags.emplace_back(it == by_id.end() ? Tag(kUnknownTag) : *it->second);
    }
    return tags;
}

}  // namespace proofblocks::qformat
