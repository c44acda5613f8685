#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "proofblocks/core.hpp"
#include "proofblocks/qformat.hpp"

namespace fixtures {

using proofblocks::Block;
using proofblocks::Group;
using proofblocks::Question;
using proofblocks::Tag;

inline std::string path(const std::string& name) { return std::string(PB_FIXTURES_DIR) + "/" + name; }

inline std::string read(const std::string& name) {
    std::ifstream in(path(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Question load(const std::string& name) {
    auto stem = name.substr(0, name.find('.'));
    auto parsed = proofblocks::qformat::parse_question(read(name), stem);
    if (!parsed.ok()) throw std::runtime_error("fixture " + name + " does not parse");
    return *parsed.question;
}

inline Block block(Tag tag, std::vector<Tag> depends = {}) {
    Block b;
    b.text = "Line " + tag;
    b.tag = std::move(tag);
    b.depends = std::move(depends);
    return b;
}

// The two-chain proof: 1-2-3 and 4-5-6 both feed 7.
inline Question fig1() {
    Question q;
    q.id = "fig1";
    q.blocks = {block("1"), block("2", {"1"}), block("3", {"2"}),    block("4"),
                block("5", {"4"}), block("6", {"5"}), block("7", {"3", "6"})};
    return q;
}

// n1; subproofs B = {b1, b2} and I = {i1, i2} after n1; c after both.
inline Question induction() {
    Question q;
    q.id = "induction";
    q.blocks = {block("n1"), block("b1"), block("b2", {"b1"}), block("i1"), block("i2", {"i1"}),
                block("c", {"B", "I"})};
    q.blocks[1].group = q.blocks[2].group = "B";
    q.blocks[3].group = q.blocks[4].group = "I";
    q.groups = {Group{"B", {"n1"}, {"b1", "b2"}}, Group{"I", {"n1"}, {"i1", "i2"}}};
    return q;
}

inline Question chain(std::size_t n) {
    Question q;
    q.id = "chain";
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Tag> deps;
        if (i > 0) deps.push_back("s" + std::to_string(i - 1));
        q.blocks.push_back(block("s" + std::to_string(i), deps));
    }
    return q;
}

}  // namespace fixtures
