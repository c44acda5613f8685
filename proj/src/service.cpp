#include "proofblocks/service.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

#include "proofblocks/error.hpp"
#include "proofblocks/grader.hpp"
#include "proofblocks/qformat.hpp"
#include "proofblocks/report.hpp"

namespace proofblocks::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kExtension = ".pb.html";

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::optional<std::uint64_t> parse_seed(std::string_view text) {
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) return std::nullopt;
    return value;
}

std::uint64_t fresh_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

Response error(int status, std::string message) {
    return {status, json{{"error", std::move(message)}}.dump()};
}

}  // namespace

std::string title_of(std::string_view prompt, std::size_t max_chars) {
    std::string text;
    bool in_tag = false, pending_space = false;
    for (char c : prompt) {
        if (c == '<') {
            in_tag = true;
            pending_space = !text.empty();
            continue;
        }
        if (in_tag) {
            in_tag = c != '>';
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !text.empty();
            continue;
        }
        if (pending_space) text += ' ';
        pending_space = false;
        text += c;
    }

    // Count UTF-8 characters, never splitting a multi-byte sequence.
    std::size_t chars = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if ((static_cast<unsigned char>(text[i]) & 0xC0) == 0x80) continue;
        if (chars++ == max_chars) return text.substr(0, i) + "...";
    }
    return text;
}

QuestionStore QuestionStore::load(const fs::path& root, std::ostream* log) {
    QuestionStore store;
    if (!fs::is_directory(root)) throw std::runtime_error(root.string() + " is not a directory");

    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.size() > kExtension.size() && name.ends_with(kExtension))
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    for (const auto& path : files) {
        auto id = fs::relative(path, root).generic_string();
        id.resize(id.size() - kExtension.size());
        auto parsed = qformat::parse_question(read_file(path), id);
        if (!parsed.ok()) {
            if (log) {
                for (const auto& f : parsed.findings)
                    if (f.severity == qformat::Severity::error)
                        *log << path.string() << ":" << f.line << ": " << f.code << " "
                             << f.message << "\n";
            }
            continue;
        }
        store.add(std::move(*parsed.question));
    }
    return store;
}

void QuestionStore::add(Question question) {
    auto graph = expand(question);
    auto title = title_of(question.prompt);
    const auto id = question.id;
    auto [it, fresh] =
        entries_.emplace(id, StoredQuestion{std::move(question), std::move(graph), std::move(title)});
    if (!fresh) throw std::invalid_argument("duplicate question id '" + id + "'");
}

std::vector<std::pair<std::string, std::string>> QuestionStore::list() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [id, entry] : entries_) out.emplace_back(id, entry.title);
    return out;
}

const StoredQuestion* QuestionStore::find(const std::string& id) const {
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
}

Response list_questions(const QuestionStore& store) {
    json items = json::array();
    for (const auto& [id, title] : store.list()) items.push_back({{"id", id}, {"title", title}});
    return {200, items.dump()};
}

Response get_question(const QuestionStore& store, const std::string& id,
                      const std::optional<std::string>& seed) {
    const auto* entry = store.find(id);
    if (!entry) return error(404, "unknown question '" + id + "'");
    std::uint64_t value = 0;
    if (seed) {
        auto parsed = parse_seed(*seed);
        if (!parsed) return error(400, "seed must be an unsigned 64-bit decimal");
        value = *parsed;
    } else {
        value = fresh_seed();
    }
    return {200, report::to_json(qformat::render_student_view(entry->question, value)).dump()};
}

Response post_grade(const QuestionStore& store, const std::string& id, std::string_view body) {
    const auto* entry = store.find(id);
    if (!entry) return error(404, "unknown question '" + id + "'");

    json doc = json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) return error(400, "body must be a JSON object");

    std::optional<std::uint64_t> seed;
    if (auto it = doc.find("seed"); it != doc.end()) {
        if (it->is_number_unsigned()) seed = it->get<std::uint64_t>();
        else if (it->is_string()) seed = parse_seed(it->get<std::string>());
    }
    if (!seed) return error(400, "seed must be an unsigned 64-bit integer or decimal string");

    auto it = doc.find("ordering");
    if (it == doc.end() || !it->is_array()) return error(400, "ordering must be an array");
    std::vector<std::string> render_ids;
    for (const auto& item : *it) {
        if (!item.is_string()) return error(400, "ordering entries must be strings");
        render_ids.push_back(item.get<std::string>());
    }

    const auto tags = qformat::resolve_ordering(entry->question, *seed, render_ids);
    GradeOutcome outcome;
    try {
        outcome = grade(entry->question, entry->graph, tags);
    } catch (const Error& e) {
        return error(500, e.what());
    }

    json out;
    out["status"] = std::string(to_string(outcome.status));
    if (outcome.first_failure) out["first_failure"] = *outcome.first_failure;
    out["score"] = outcome.score.value();
    out["score_numerator"] = outcome.score.numerator();
    out["score_denominator"] = outcome.score.denominator();
    out["attempt_echo"] = render_ids;
    return {200, out.dump()};
}

struct Server::Impl {
    const QuestionStore& store;
    ServerOptions options;
    httplib::Server http;
    int port = -1;

    Impl(const QuestionStore& s, ServerOptions o) : store(s), options(std::move(o)) {}

    void cors(const httplib::Request& req, httplib::Response& res) const {
        const auto& allowed = options.allowed_origins;
        if (allowed.empty()) return;
        const bool any = std::find(allowed.begin(), allowed.end(), "*") != allowed.end();
        const auto origin = req.get_header_value("Origin");
        if (any) {
            res.set_header("Access-Control-Allow-Origin", "*");
        } else if (!origin.empty() &&
                   std::find(allowed.begin(), allowed.end(), origin) != allowed.end()) {
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Vary", "Origin");
        } else {
            return;
        }
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
    }

    void reply(const httplib::Request& req, httplib::Response& res, const Response& r) const {
        res.status = r.status;
        res.set_content(r.body, "application/json; charset=utf-8");
        cors(req, res);
    }

    void install() {
        http.Get("/api/questions", [this](const httplib::Request& req, httplib::Response& res) {
            reply(req, res, list_questions(store));
        });
        http.Get(R"(/api/questions/(.+))",
                 [this](const httplib::Request& req, httplib::Response& res) {
                     std::optional<std::string> seed;
                     if (req.has_param("seed")) seed = req.get_param_value("seed");
                     reply(req, res, get_question(store, req.matches[1], seed));
                 });
        http.Post(R"(/api/questions/(.+)/grade)",
                  [this](const httplib::Request& req, httplib::Response& res) {
                      reply(req, res, post_grade(store, req.matches[1], req.body));
                  });
        http.Options(R"(/api/.*)", [this](const httplib::Request& req, httplib::Response& res) {
            res.status = 204;
            cors(req, res);
        });
        if (options.static_dir) http.set_mount_point("/", options.static_dir->string());
    }
};

Server::Server(const QuestionStore& store, ServerOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {
    impl_->install();
}

Server::~Server() { stop(); }

int Server::bind() {
    auto& im = *impl_;
    if (im.options.port == 0) {
        im.port = im.http.bind_to_any_port(im.options.host);
    } else {
        im.port = im.http.bind_to_port(im.options.host, im.options.port) ? im.options.port : -1;
    }
    return im.port;
}

bool Server::run() { return impl_->port >= 0 && impl_->http.listen_after_bind(); }

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

void Server::stop() {
    if (impl_) impl_->http.stop();
}

}  // namespace proofblocks::service
