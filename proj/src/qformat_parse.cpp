#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <unordered_map>

#include "proofblocks/error.hpp"
#include "proofblocks/qformat.hpp"

namespace proofblocks::qformat {

std::string_view to_string(Severity severity) {
    return severity == Severity::error ? "error" : "warning";
}

namespace {

struct Attribute {
    std::string name;
    std::string value;
    std::size_t line = 0;
};

struct Element {
    std::string name;
    std::vector<Attribute> attributes;
    bool self_closing = false;
    std::size_t line = 0;

    const Attribute* find(std::string_view key) const {
        for (const auto& a : attributes)
            if (a.name == key) return &a;
        return nullptr;
    }
};

struct RawAnswer {
    Element element;
    std::string text;
    std::optional<std::size_t> group;
};

struct RawGroup {
    Element element;
    std::vector<std::size_t> members;
};

// Raised to stop parsing after a structural finding has been recorded.
struct Abort {};

std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n\f\v";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

bool valid_tag(std::string_view tag) {
    if (tag.empty()) return false;
    return std::none_of(tag.begin(), tag.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '<' || c == '>' ||
               c == '"' || c == '\'';
    });
}

std::vector<std::string> split_depends(std::string_view value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        auto comma = value.find(',', start);
        if (comma == std::string_view::npos) comma = value.size();
        auto part = trim(value.substr(start, comma - start));
        if (!part.empty()) out.emplace_back(part);
        start = comma + 1;
    }
    return out;
}

class MarkupParser {
public:
    explicit MarkupParser(std::string text) : src_(std::move(text)) {
        line_starts_.push_back(0);
        for (std::size_t i = 0; i < src_.size(); ++i)
            if (src_[i] == '\n') line_starts_.push_back(i + 1);
    }

    ParseResult run(std::string id) {
        ParseResult result;
        try {
            scan_document();
            result.question = build(std::move(id));
        } catch (const Abort&) {
        }
        result.findings = std::move(findings_);
        const bool failed = std::any_of(result.findings.begin(), result.findings.end(),
                                        [](const auto& f) { return f.severity == Severity::error; });
        if (failed) result.question.reset();
        return result;
    }

private:
    std::size_t line_at(std::size_t offset) const {
        auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
        return static_cast<std::size_t>(it - line_starts_.begin());
    }

    void report(Severity severity, std::string code, std::size_t line, std::string message) {
        findings_.push_back({severity, std::move(code), line, std::move(message)});
    }

    [[noreturn]] void malformed(std::size_t line, std::string message) {
        report(Severity::error, "E06", line, std::move(message));
        throw Abort{};
    }

    bool at(std::string_view s) const { return src_.compare(pos_, s.size(), s) == 0; }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    void skip_comment() {
        const auto start = pos_;
        const auto end = src_.find("-->", pos_ + 4);
        if (end == std::string::npos) malformed(line_at(start), "unclosed comment");
        pos_ = end + 3;
    }

    std::string read_name() {
        const auto start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '-' ||
                src_[pos_] == '_' || src_[pos_] == ':' || src_[pos_] == '.'))
            ++pos_;
        return src_.substr(start, pos_ - start);
    }

    // Reads an opening tag with pos_ on its '<'.
    Element read_element() {
        Element el;
        el.line = line_at(pos_);
        ++pos_;
        el.name = read_name();
        while (true) {
            skip_space();
            if (pos_ >= src_.size()) malformed(el.line, "unterminated <" + el.name + "> tag");
            if (src_[pos_] == '>') {
                ++pos_;
                return el;
            }
            if (at("/>")) {
                pos_ += 2;
                el.self_closing = true;
                return el;
            }
            Attribute attr;
            attr.line = line_at(pos_);
            attr.name = read_name();
            if (attr.name.empty())
                malformed(attr.line, "unexpected character in <" + el.name + "> tag");
            skip_space();
            if (pos_ < src_.size() && src_[pos_] == '=') {
                ++pos_;
                skip_space();
                if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'')) {
                    const char quote = src_[pos_++];
                    const auto end = src_.find(quote, pos_);
                    if (end == std::string::npos)
                        malformed(attr.line, "unterminated value for attribute " + attr.name);
                    attr.value = src_.substr(pos_, end - pos_);
                    pos_ = end + 1;
                } else {
                    const auto start = pos_;
                    while (pos_ < src_.size() &&
                           !std::isspace(static_cast<unsigned char>(src_[pos_])) &&
                           src_[pos_] != '>' && !at("/>"))
                        ++pos_;
                    attr.value = src_.substr(start, pos_ - start);
                }
            }
            el.attributes.push_back(std::move(attr));
        }
    }

    // Verbatim content up to the matching close tag.
    std::string read_raw(const Element& el) {
        if (el.self_closing) return {};
        const std::string close = "</" + el.name + ">";
        const auto end = src_.find(close, pos_);
        if (end == std::string::npos) malformed(el.line, "unclosed <" + el.name + ">");
        std::string content = src_.substr(pos_, end - pos_);
        pos_ = end + close.size();
        return content;
    }

    void scan_document() {
        while (true) {
            pos_ = src_.find('<', pos_);
            if (pos_ == std::string::npos) {
                pos_ = src_.size();
                return;
            }
            if (at("<!--")) {
                skip_comment();
            } else if (at("</")) {
                const auto line = line_at(pos_);
                pos_ += 2;
                const auto name = read_name();
                if (name.starts_with("pl-")) malformed(line, "unexpected </" + name + ">");
                pos_ = std::min(src_.find('>', pos_), src_.size());
            } else if (pos_ + 1 < src_.size() &&
                       std::isalpha(static_cast<unsigned char>(src_[pos_ + 1]))) {
                auto el = read_element();
                if (el.name == "pl-question-panel") {
                    if (prompt_) malformed(el.line, "more than one <pl-question-panel>");
                    prompt_ = std::string(trim(read_raw(el)));
                } else if (el.name == "pl-order-blocks") {
                    if (container_) malformed(el.line, "more than one <pl-order-blocks>");
                    container_ = el;
                    if (!el.self_closing) scan_container();
                } else if (el.name.starts_with("pl-")) {
                    malformed(el.line, "unknown or misplaced element <" + el.name + ">");
                }
            } else {
                ++pos_;
            }
        }
    }

    // Children of pl-order-blocks or pl-block-group up to the close tag.
    void scan_children(std::string_view parent, std::size_t parent_line,
                       std::optional<std::size_t> group) {
        const std::string close = "</" + std::string(parent) + ">";
        while (true) {
            skip_space();
            if (pos_ >= src_.size()) malformed(parent_line, "unclosed <" + std::string(parent) + ">");
            if (at("<!--")) {
                skip_comment();
                continue;
            }
            if (at(close)) {
                pos_ += close.size();
                return;
            }
            if (src_[pos_] != '<') malformed(line_at(pos_), "unexpected text in <" + std::string(parent) + ">");
            if (at("</")) malformed(line_at(pos_), "mismatched closing tag in <" + std::string(parent) + ">");

            auto el = read_element();
            if (el.name == "pl-answer") {
                scan_answer(std::move(el), group);
            } else if (el.name == "pl-block-group") {
                if (group) {
                    report(Severity::error, "E05", el.line, "pl-block-group cannot be nested");
                    throw Abort{};
                }
                scan_group(std::move(el));
            } else {
                malformed(el.line, "unexpected <" + el.name + "> inside <" + std::string(parent) + ">");
            }
        }
    }

    void scan_container() { scan_children("pl-order-blocks", container_->line, std::nullopt); }

    void scan_group(Element el) {
        const std::size_t index = groups_.size();
        groups_.push_back({std::move(el), {}});
        const auto line = groups_[index].element.line;
        if (!groups_[index].element.self_closing) scan_children("pl-block-group", line, index);
        if (groups_[index].members.empty()) malformed(line, "empty <pl-block-group>");
    }

    void scan_answer(Element el, std::optional<std::size_t> group) {
        auto body = read_raw(el);
        for (std::string_view bad : {"<pl-answer", "<pl-block-group", "</pl-block-group",
                                     "</pl-order-blocks"}) {
            if (body.find(bad) != std::string::npos) malformed(el.line, "unclosed <pl-answer>");
        }
        if (group) groups_[*group].members.push_back(answers_.size());
        answers_.push_back({std::move(el), std::string(trim(body)), group});
    }

    void ignore_unknown(const Element& el, std::initializer_list<std::string_view> known) {
        for (const auto& a : el.attributes) {
            if (std::find(known.begin(), known.end(), a.name) != known.end()) continue;
            report(Severity::warning, "P01", a.line,
                   "attribute '" + a.name + "' on <" + el.name + "> is ignored");
        }
    }

    GradingOptions read_options() {
        GradingOptions options;
        const Element& el = *container_;
        ignore_unknown(el, {"feedback", "partial-credit"});
        if (const auto* a = el.find("feedback")) {
            if (a->value == "none") {
                options.feedback_mode = FeedbackMode::none;
            } else if (a->value == "first-failure" || a->value == "first-wrong" ||
                       a->value == "first-wrong-verbose") {
                options.feedback_mode = FeedbackMode::first_failure;
            } else {
                malformed(a->line, "unsupported feedback value '" + a->value + "'");
            }
        }
        if (const auto* a = el.find("partial-credit")) {
            if (a->value == "none") {
                options.scoring_mode = ScoringMode::binary;
            } else if (a->value == "edit-distance" || a->value == "lcs") {
                options.scoring_mode = ScoringMode::edit_distance;
            } else {
                malformed(a->line, "unsupported partial-credit value '" + a->value + "'");
            }
        }
        return options;
    }

    std::optional<Question> build(std::string id) {
        if (!container_) {
            report(Severity::error, "E07", 1, "no <pl-order-blocks> element");
            return std::nullopt;
        }
        Question q;
        q.id = std::move(id);
        q.prompt = prompt_.value_or("");
        q.options = read_options();

        // Explicit tags first so synthetic ones can avoid them.
        std::set<std::string> explicit_tags;
        auto read_tag = [&](const Element& el) -> std::optional<std::string> {
            const auto* a = el.find("tag");
            if (!a) return std::nullopt;
            std::string tag(trim(a->value));
            if (!valid_tag(tag)) malformed(a->line, "invalid tag '" + a->value + "'");
            explicit_tags.insert(tag);
            return tag;
        };
        std::vector<std::optional<std::string>> answer_tags, group_tags;
        for (const auto& a : answers_) answer_tags.push_back(read_tag(a.element));
        for (const auto& g : groups_) group_tags.push_back(read_tag(g.element));

        auto synthesize = [&](char prefix, std::size_t& counter) {
            std::string tag;
            do tag = prefix + std::to_string(++counter);
            while (explicit_tags.count(tag));
            return tag;
        };
        std::size_t next_answer = 0, next_group = 0;

        std::map<std::string, std::size_t> tag_lines;
        auto claim = [&](const std::string& tag, std::size_t line) {
            if (auto [it, fresh] = tag_lines.emplace(tag, line); !fresh)
                report(Severity::error, "E02", line,
                       "duplicate tag '" + tag + "' (first declared on line " +
                           std::to_string(it->second) + ")");
        };

        for (std::size_t i = 0; i < groups_.size(); ++i) {
            const auto& el = groups_[i].element;
            ignore_unknown(el, {"tag", "depends"});
            Group g;
            g.tag = group_tags[i] ? *group_tags[i] : synthesize('g', next_group);
            claim(g.tag, el.line);
            if (const auto* d = el.find("depends")) g.depends = split_depends(d->value);
            q.groups.push_back(std::move(g));
        }
        for (std::size_t i = 0; i < answers_.size(); ++i) {
            const auto& raw = answers_[i];
            const auto& el = raw.element;
            ignore_unknown(el, {"tag", "depends", "correct"});
            Block b;
            b.tag = answer_tags[i] ? *answer_tags[i] : synthesize('d', next_answer);
            claim(b.tag, el.line);
            b.text = raw.text;
            if (const auto* c = el.find("correct")) {
                if (c->value == "false") b.is_distractor = true;
                else if (c->value != "true")
                    malformed(c->line, "correct must be true or false, got '" + c->value + "'");
            }
            if (const auto* d = el.find("depends")) b.depends = split_depends(d->value);
            if (raw.group) {
                b.group = q.groups[*raw.group].tag;
                q.groups[*raw.group].members.push_back(b.tag);
            }
            q.blocks.push_back(std::move(b));
        }

        check_references(q);

        if (q.required_count() == 0)
            report(Severity::error, "E07", container_->line, "no required <pl-answer> blocks");

        if (has_errors()) return std::nullopt;

        try {
            expand(q);
        } catch (const CycleError& e) {
            std::size_t line = container_->line;
            for (std::size_t i = 0; i < q.blocks.size(); ++i) {
                const auto& tags = e.tags();
                if (std::find(tags.begin(), tags.end(), q.blocks[i].tag) != tags.end()) {
                    line = answers_[i].element.line;
                    break;
                }
            }
            report(Severity::error, "E03", line, e.what());
            return std::nullopt;
        } catch (const Error& e) {
            report(Severity::error, "E06", container_->line, e.what());
            return std::nullopt;
        }
        return q;
    }

    void check_references(const Question& q) {
        std::unordered_map<std::string, bool> is_distractor;
        for (const auto& b : q.blocks) is_distractor.emplace(b.tag, b.is_distractor);
        for (const auto& g : q.groups) is_distractor.emplace(g.tag, false);

        auto check = [&](const std::string& owner, const Element& el,
                         const std::vector<std::string>& depends) {
            const auto* attr = el.find("depends");
            const std::size_t line = attr ? attr->line : el.line;
            for (const auto& ref : depends) {
                auto it = is_distractor.find(ref);
                if (it == is_distractor.end())
                    report(Severity::error, "E01", line,
                           "'" + owner + "' depends on unknown tag '" + ref + "'");
                else if (it->second)
                    report(Severity::error, "E04", line,
                           "'" + owner + "' depends on distractor '" + ref + "'");
            }
        };
        for (std::size_t i = 0; i < q.groups.size(); ++i)
            check(q.groups[i].tag, groups_[i].element, q.groups[i].depends);
        for (std::size_t i = 0; i < q.blocks.size(); ++i) {
            const auto& b = q.blocks[i];
            if (b.is_distractor && !b.depends.empty()) {
                report(Severity::error, "E04", answers_[i].element.line,
                       "distractor '" + b.tag + "' must not declare dependencies");
                continue;
            }
            check(b.tag, answers_[i].element, b.depends);
        }
    }

    bool has_errors() const {
        return std::any_of(findings_.begin(), findings_.end(),
                           [](const auto& f) { return f.severity == Severity::error; });
    }

    std::string src_;
    std::size_t pos_ = 0;
    std::vector<std::size_t> line_starts_;
    std::vector<ParseFinding> findings_;

    std::optional<std::string> prompt_;
    std::optional<Element> container_;
    std::vector<RawAnswer> answers_;
    std::vector<RawGroup> groups_;
};

std::string normalize_newlines(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\r') {
            out += '\n';
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        } else {
            out += text[i];
        }
    }
    return out;
}

}  // namespace

ParseResult parse_question(std::string_view text, std::string id) {
    return MarkupParser(normalize_newlines(text)).run(std::move(id));
}

std::string to_markup(const Question& question) {
    auto join = [](const std::vector<Tag>& tags) {
        std::string out;
        for (const auto& t : tags) {
            if (!out.empty()) out += ',';
            out += t;
        }
        return out;
    };
    auto answer = [&](const Block& b, std::string_view indent) {
        std::string out(indent);
        out += "<pl-answer tag=\"" + b.tag + "\"";
        if (!b.depends.empty()) out += " depends=\"" + join(b.depends) + "\"";
        if (b.is_distractor) out += " correct=\"false\"";
        out += ">" + b.text + "</pl-answer>\n";
        return out;
    };

    std::string out = "<pl-question-panel>\n" + question.prompt + "\n</pl-question-panel>\n\n";
    out += "<pl-order-blocks feedback=\"";
    out += question.options.feedback_mode == FeedbackMode::none ? "none" : "first-failure";
    out += "\" partial-credit=\"";
    out += question.options.scoring_mode == ScoringMode::binary ? "none" : "edit-distance";
    out += "\">\n";

    // A group is written where its first member appears; members are assumed
    // to be adjacent in author order.
    std::set<std::string> written;
    for (const auto& b : question.blocks) {
        if (!b.group) {
            out += answer(b, "  ");
            continue;
        }
        if (!written.insert(*b.group).second) continue;
        const Group* g = question.find_group(*b.group);
        if (!g) continue;
        out += "  <pl-block-group tag=\"" + g->tag + "\"";
        if (!g->depends.empty()) out += " depends=\"" + join(g->depends) + "\"";
        out += ">\n";
        for (const auto& m : g->members)
            if (const Block* member = question.find_block(m)) out += answer(*member, "    ");
        out += "  </pl-block-group>\n";
    }
    out += "</pl-order-blocks>\n";
    return out;
}

}  // namespace proofblocks::qformat
