#include "proofblocks/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "proofblocks/error.hpp"
#include "proofblocks/grader.hpp"
#include "proofblocks/linter.hpp"
#include "proofblocks/qformat.hpp"
#include "proofblocks/report.hpp"
#include "proofblocks/service.hpp"

namespace proofblocks::cli {

namespace {

namespace fs = std::filesystem;

// Raised to end a command with a given exit status after its message has
// been written.
struct Exit {
    int code;
};

std::string read_file(const std::string& path, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "error: cannot read " << path << "\n";
        throw Exit{kUsageOrIo};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string question_id(const std::string& path) {
    auto name = fs::path(path).filename().string();
    constexpr std::string_view ext = ".pb.html";
    if (name.size() > ext.size() && name.ends_with(ext)) name.resize(name.size() - ext.size());
    else name = fs::path(path).stem().string();
    return name;
}

void print_parse_findings(const std::string& path, const std::vector<qformat::ParseFinding>& findings,
                          std::ostream& os) {
    for (const auto& f : findings)
        os << path << ":" << f.line << ": " << qformat::to_string(f.severity) << " " << f.code
           << ": " << f.message << "\n";
}

// Parses the file or ends the command with kLintErrors.
Question load_question(const std::string& path, std::ostream& err) {
    auto parsed = qformat::parse_question(read_file(path, err), question_id(path));
    if (!parsed.ok()) {
        print_parse_findings(path, parsed.findings, err);
        throw Exit{kLintErrors};
    }
    return std::move(*parsed.question);
}

ExpandedGraph expand_or_exit(const Question& q, std::ostream& err) {
    try {
        return expand(q);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        throw Exit{kLintErrors};
    }
}

std::string join(const std::vector<Tag>& tags) {
    std::string out;
    for (const auto& t : tags) {
        if (!out.empty()) out += ',';
        out += t;
    }
    return out;
}

std::vector<Tag> split_ordering(const std::string& text) {
    std::vector<Tag> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        auto part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        auto first = part.find_first_not_of(" \t");
        auto last = part.find_last_not_of(" \t");
        out.push_back(first == std::string::npos ? std::string{} : part.substr(first, last - first + 1));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

int do_validate(const std::string& path, bool as_json, std::ostream& out, std::ostream& err) {
    auto parsed = qformat::parse_question(read_file(path, err), question_id(path));
    std::vector<linter::LintFinding> findings;
    if (parsed.ok()) findings = linter::lint(*parsed.question);
    const auto doc = report::validation_report(question_id(path), parsed.findings, findings);

    if (as_json) {
        out << doc.dump(2) << "\n";
    } else {
        print_parse_findings(path, parsed.findings, out);
        for (const auto& f : findings) {
            out << path << ": " << linter::to_string(f.severity) << " " << f.code;
            if (!f.subject.empty()) out << " [" << f.subject << "]";
            out << ": " << f.message << "\n";
        }
        out << (doc["ok"].get<bool>() ? "ok" : "invalid") << "\n";
    }
    return doc["ok"].get<bool>() ? kSuccess : kLintErrors;
}

int do_grade(const std::string& path, const std::string& ordering, const std::string& submission_path,
             bool as_json, std::ostream& out, std::ostream& err) {
    const auto q = load_question(path, err);
    const auto graph = expand_or_exit(q, err);

    std::vector<Tag> tags;
    if (!submission_path.empty()) {
        try {
            tags = qformat::parse_submission(read_file(submission_path, err)).ordering;
        } catch (const MalformedDocumentError& e) {
            err << submission_path << ": malformed submission at byte " << e.position() << ": "
                << e.what() << "\n";
            return kUsageOrIo;
        }
    } else {
        tags = split_ordering(ordering);
    }

    GradeOutcome outcome;
    try {
        outcome = grade(q, graph, tags);
    } catch (const TooLargeError& e) {
        err << "error: " << e.what() << "\n";
        return kLintErrors;
    }

    if (as_json) {
        out << report::to_json(outcome).dump() << "\n";
    } else {
        switch (outcome.status) {
            case GradeStatus::correct: out << "correct\n"; break;
            case GradeStatus::wrong_at_line:
                out << "wrong at line " << *outcome.first_failure << "\n";
                break;
            case GradeStatus::incomplete: out << "incomplete\n"; break;
        }
        out << "edit distance: " << outcome.edit_distance << "\n";
        out << "score: " << outcome.score.numerator() << "/" << outcome.score.denominator() << " ("
            << std::fixed << std::setprecision(6) << outcome.score.value() << ")\n";
    }
    return outcome.status == GradeStatus::correct ? kSuccess : kIncorrect;
}

int do_enumerate(const std::string& path, std::optional<std::size_t> limit, std::ostream& out,
                 std::ostream& err) {
    const auto graph = expand_or_exit(load_question(path, err), err);
    try {
        for (const auto& ordering : valid_orderings(graph, limit)) out << join(ordering) << "\n";
    } catch (const TooLargeError& e) {
        err << "error: " << e.what() << "; pass --limit\n";
        return kUsageOrIo;
    }
    return kSuccess;
}

int do_count(const std::string& path, std::ostream& out, std::ostream& err) {
    const auto graph = expand_or_exit(load_question(path, err), err);
    try {
        out << count_orderings(graph) << "\n";
    } catch (const TooLargeError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageOrIo;
    }
    return kSuccess;
}

int do_render(const std::string& path, std::uint64_t seed, bool as_json, std::ostream& out,
              std::ostream& err) {
    const auto view = qformat::render_student_view(load_question(path, err), seed);
    if (as_json) {
        out << report::to_json(view).dump() << "\n";
        return kSuccess;
    }
    out << "question: " << view.question_id << "\nseed: " << view.seed << "\n\n"
        << view.prompt << "\n\n";
    for (const auto& b : view.blocks) out << "[" << b.render_id << "] " << b.text << "\n";
    return kSuccess;
}

int do_serve(int port, const std::string& dir, const std::string& host,
             const std::string& static_dir, const std::vector<std::string>& origins,
             std::ostream& out, std::ostream& err) {
    service::QuestionStore store;
    try {
        store = service::QuestionStore::load(dir, &err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsageOrIo;
    }
    service::ServerOptions options;
    options.host = host;
    options.port = port;
    options.allowed_origins = origins;
    if (!static_dir.empty()) options.static_dir = static_dir;

    service::Server server(store, options);
    const int bound = server.bind();
    if (bound < 0) {
        err << "error: cannot bind " << host << ":" << port << "\n";
        return kUsageOrIo;
    }
    out << "serving " << store.size() << " question(s) from " << dir << " on " << host << ":"
        << bound << std::endl;
    return server.run() ? kSuccess : kUsageOrIo;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Proof Blocks question toolkit", "proofblocks"};
    app.require_subcommand(1);

    std::string file;
    bool as_json = false;

    auto* validate = app.add_subcommand("validate", "Parse and lint a question");
    validate->add_option("file", file, "Question file (.pb.html)")->required();
    validate->add_flag("--json", as_json, "Emit a JSON report");

    std::string ordering, submission;
    auto* grade_cmd = app.add_subcommand("grade", "Grade an ordering of block tags");
    grade_cmd->add_option("file", file, "Question file (.pb.html)")->required();
    auto* ordering_opt = grade_cmd->add_option("--ordering", ordering, "Comma-separated block tags");
    auto* submission_opt =
        grade_cmd->add_option("--submission", submission, "Submission JSON document");
    ordering_opt->excludes(submission_opt);
    grade_cmd->add_flag("--json", as_json, "Emit a JSON outcome");

    std::size_t limit = 0;
    auto* enumerate = app.add_subcommand("enumerate", "List every valid ordering");
    enumerate->add_option("file", file, "Question file (.pb.html)")->required();
    auto* limit_opt = enumerate->add_option("--limit", limit, "Stop after N orderings");

    auto* count = app.add_subcommand("count", "Count valid orderings");
    count->add_option("file", file, "Question file (.pb.html)")->required();

    std::uint64_t seed = 0;
    auto* render = app.add_subcommand("render", "Show the shuffled student view");
    render->add_option("file", file, "Question file (.pb.html)")->required();
    render->add_option("--seed", seed, "Shuffle seed")->required();
    render->add_flag("--json", as_json, "Emit JSON");

    int port = 8080;
    std::string questions_dir, host = "0.0.0.0", static_dir;
    std::vector<std::string> origins;
    if (const char* env = std::getenv("PB_QUESTIONS_DIR")) questions_dir = env;
    auto* serve = app.add_subcommand("serve", "Serve questions over HTTP");
    serve->add_option("--port", port, "Listen port")->required();
    auto* dir_opt = serve->add_option("--questions-dir", questions_dir,
                                      "Question directory (default: $PB_QUESTIONS_DIR)");
    serve->add_option("--host", host, "Listen address");
    serve->add_option("--static-dir", static_dir, "Client assets served under /");
    serve->add_option("--allow-origin", origins, "CORS origin allowed to call the API");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (grade_cmd->parsed() && ordering_opt->count() == 0 && submission_opt->count() == 0)
            throw CLI::RequiredError("--ordering or --submission");
        if (serve->parsed() && questions_dir.empty())
            throw CLI::RequiredError(dir_opt->get_name());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsageOrIo;
    }

    try {
        if (validate->parsed()) return do_validate(file, as_json, out, err);
        if (grade_cmd->parsed()) return do_grade(file, ordering, submission, as_json, out, err);
        if (enumerate->parsed())
            return do_enumerate(file, limit_opt->count() ? std::optional(limit) : std::nullopt, out,
                                err);
        if (count->parsed()) return do_count(file, out, err);
        if (render->parsed()) return do_render(file, seed, as_json, out, err);
        if (serve->parsed())
            return do_serve(port, questions_dir, host, static_dir, origins, out, err);
    } catch (const Exit& e) {
        return e.code;
    }
    return kUsageOrIo;
}

}  // namespace proofblocks::cli
