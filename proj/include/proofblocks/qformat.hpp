#pragma once

// Question markup (.pb.html), submission documents, and seeded student views.
//
// Recognized markup elements:
//
//   <pl-question-panel>   prompt, kept verbatim
//   <pl-order-blocks>     container; attributes feedback, partial-credit
//   <pl-answer>           one draggable block; attributes tag, depends, correct
//   <pl-block-group>      subproof; attributes tag, depends; holds pl-answer only
//
// Markup outside these elements is skipped. Any other pl- element, or a
// non-answer element inside the container, is malformed.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "proofblocks/core.hpp"

namespace proofblocks::qformat {

enum class Severity { error, warning };

std::string_view to_string(Severity severity);

// Parse finding codes.
//   E01 unknown tag in depends        E05 nested pl-block-group
//   E02 duplicate tag                 E06 malformed markup
//   E03 dependency cycle              E07 no container or no required blocks
//   E04 dependency on a distractor    P01 attribute accepted but ignored
struct ParseFinding {
    Severity severity = Severity::error;
    std::string code;
    std::size_t line = 0;  // 1-based
    std::string message;

    friend bool operator==(const ParseFinding&, const ParseFinding&) = default;
};

struct ParseResult {
    std::optional<Question> question;  // empty iff any finding is an error
    std::vector<ParseFinding> findings;

    bool ok() const noexcept { return question.has_value(); }
};

ParseResult parse_question(std::string_view text, std::string id = {});

// Canonical markup for a question; parse_question(to_markup(q), q.id)
// reproduces q whenever block texts carry no surrounding whitespace.
std::string to_markup(const Question& question);

// Reads {"question_id": "...", "ordering": ["...", ...]}. The ordering is not
// validated. Throws MalformedDocumentError.
Submission parse_submission(std::string_view text);

// Pinned generator behind the student-view shuffle: SplitMix64.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// 64-bit FNV-1a.
std::uint64_t stable_hash(std::string_view text) noexcept;

struct ViewBlock {
    std::string render_id;
    std::string text;

    friend bool operator==(const ViewBlock&, const ViewBlock&) = default;
};

struct StudentView {
    std::string question_id;
    std::uint64_t seed = 0;
    std::string prompt;
    std::vector<ViewBlock> blocks;

    friend bool operator==(const StudentView&, const StudentView&) = default;
};

// Indices into question.blocks in shuffled order. The generator is seeded
// with seed ^ stable_hash(question.id) and drives a Fisher-Yates pass from
// the last position down, swapping position i with next() % (i + 1).
std::vector<std::size_t> shuffled_order(const Question& question, std::uint64_t seed);

// Render id of shuffled position `position`: zero-padded decimal, at least
// two digits wide.
std::string render_id(std::size_t position, std::size_t block_count);

StudentView render_student_view(const Question& question, std::uint64_t seed);

// Never a valid block tag.
inline constexpr std::string_view kUnknownTag = "<unknown>";

// Maps render ids back to block tags for (question, seed); unknown ids map to
// kUnknownTag.
std::vector<Tag> resolve_ordering(const Question& question, std::uint64_t seed,
                                  std::span<const std::string> render_ids);

}  // namespace proofblocks::qformat
