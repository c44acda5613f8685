#pragma once

// Stateless HTTP API over a directory of questions.
//
//   GET  /api/questions               [{"id", "title"}] sorted by id
//   GET  /api/questions/{id}?seed=S   student view; seed is random when absent
//   POST /api/questions/{id}/grade    {"seed", "ordering": [render ids]}
//
// The seed is the whole session. Nothing derived from tags, dependencies,
// groups, or distractor flags is ever written to a response.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "proofblocks/core.hpp"

namespace proofblocks::service {

struct StoredQuestion {
    Question question;
    ExpandedGraph graph;
    std::string title;
};

class QuestionStore {
public:
    QuestionStore() = default;

    // Loads every *.pb.html below root; the id is the relative path without
    // the extension. Files that fail to parse are skipped and reported to log.
    static QuestionStore load(const std::filesystem::path& root, std::ostream* log = nullptr);

    // Throws on an invalid question or a duplicate id.
    void add(Question question);

    std::vector<std::pair<std::string, std::string>> list() const;
    const StoredQuestion* find(const std::string& id) const;
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::map<std::string, StoredQuestion> entries_;
};

// Plain text of a prompt, whitespace collapsed, cut to max_chars characters.
std::string title_of(std::string_view prompt, std::size_t max_chars = 80);

struct Response {
    int status = 200;
    std::string body;  // JSON
};

Response list_questions(const QuestionStore& store);
Response get_question(const QuestionStore& store, const std::string& id,
                      const std::optional<std::string>& seed);
Response post_grade(const QuestionStore& store, const std::string& id, std::string_view body);

struct ServerOptions {
    std::string host = "0.0.0.0";
    int port = 8080;
    std::optional<std::filesystem::path> static_dir;
    // Origins granted CORS access; "*" allows any.
    std::vector<std::string> allowed_origins;
};

class Server {
public:
    Server(const QuestionStore& store, ServerOptions options);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    // Binds options.port (0 picks a free port) and returns the bound port, or
    // -1 on failure.
    int bind();
    // Serves until stop(); requires a successful bind().
    bool run();
    // Blocks until the server accepts connections, for in-process callers.
    void wait_until_ready() const;
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace proofblocks::service
