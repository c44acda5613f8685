#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace proofblocks {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The expanded precedence relation contains a cycle.
class CycleError : public Error {
public:
    explicit CycleError(std::vector<std::string> tags)
        : Error("dependency cycle through: " + join(tags)), tags_(std::move(tags)) {}

    // Tags of blocks that lie on, or depend on, a cycle.
    const std::vector<std::string>& tags() const noexcept { return tags_; }

private:
    static std::string join(const std::vector<std::string>& tags) {
        std::string out;
        for (const auto& t : tags) {
            if (!out.empty()) out += ", ";
            out += t;
        }
        return out;
    }

    std::vector<std::string> tags_;
};

// A depends list points at a distractor block.
class DistractorDependencyError : public Error {
public:
    using Error::Error;
};

// A question violates a structural invariant (unknown reference, duplicate
// tag, nested group, no required blocks).
class InvalidQuestionError : public Error {
public:
    using Error::Error;
};

// An exhaustive routine was asked to work on a graph above its size guard.
class TooLargeError : public Error {
public:
    TooLargeError(std::size_t nodes, std::size_t limit)
        : Error("graph has " + std::to_string(nodes) + " nodes; limit is " +
                std::to_string(limit)),
          nodes_(nodes), limit_(limit) {}

    std::size_t nodes() const noexcept { return nodes_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t nodes_;
    std::size_t limit_;
};

// A submission document could not be read.
class MalformedDocumentError : public Error {
public:
    MalformedDocumentError(const std::string& what, std::size_t position)
        : Error(what), position_(position) {}

    // Byte offset into the document where reading failed.
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace proofblocks
