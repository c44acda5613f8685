#include <doctest.h>

#include <filesystem>
#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "proofblocks/cli.hpp"

using proofblocks::cli::run;
namespace cli = proofblocks::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "proofblocks");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return fixtures::path(name); }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    auto p = std::filesystem::temp_directory_path() / ("pb_cli_" + name);
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

}  // namespace

TEST_CASE("cli grade: correct ordering") {
    auto r = invoke({"grade", fixture("fig1.pb.html"), "--ordering", "1,4,2,3,5,6,7"});
    CHECK(r.code == cli::kSuccess);
    CHECK(r.out == "correct\nedit distance: 0\nscore: 1/1 (1.000000)\n");
}

TEST_CASE("cli grade: wrong ordering as JSON") {
    auto r = invoke({"grade", fixture("fig1.pb.html"), "--ordering", "2,1,3,4,5,6,7", "--json"});
    CHECK(r.code == cli::kIncorrect);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["status"] == "wrong_at_line");
    CHECK(doc["first_failure"] == 1);
    CHECK(doc["edit_distance"] == 2);
    CHECK(doc["score_numerator"] == 5);
    CHECK(doc["score_denominator"] == 7);
    CHECK(doc["score"].get<double>() == doctest::Approx(5.0 / 7.0).epsilon(1e-9));
}

TEST_CASE("cli grade: prefix and empty orderings") {
    auto r = invoke({"grade", fixture("fig1.pb.html"), "--ordering", "1,2,3"});
    CHECK(r.code == cli::kIncorrect);
    CHECK(r.out == "incomplete\nedit distance: 4\nscore: 3/7 (0.428571)\n");

    r = invoke({"grade", fixture("fig1.pb.html"), "--ordering", ""});
    CHECK(r.code == cli::kIncorrect);
    CHECK(r.out.starts_with("incomplete\nedit distance: 7\n"));
}

TEST_CASE("cli grade: submission file") {
    const auto ok = temp_file("ok.json", R"({"question_id": "fig1", "ordering": ["4","5","6","1","2","3","7"]})");
    auto r = invoke({"grade", fixture("fig1.pb.html"), "--submission", ok.string()});
    CHECK(r.code == cli::kSuccess);
    CHECK(r.out.starts_with("correct\n"));

    const auto bad = temp_file("bad.json", R"({"ordering": ["1", 2]})");
    r = invoke({"grade", fixture("fig1.pb.html"), "--submission", bad.string()});
    CHECK(r.code == cli::kUsageOrIo);
    CHECK(r.err.find("malformed submission") != std::string::npos);

    const auto broken = temp_file("broken.json", "{\"ordering\": [");
    r = invoke({"grade", fixture("fig1.pb.html"), "--submission", broken.string()});
    CHECK(r.code == cli::kUsageOrIo);
}

TEST_CASE("cli count and enumerate") {
    auto r = invoke({"count", fixture("chain5.pb.html")});
    CHECK(r.code == cli::kSuccess);
    CHECK(r.out == "1\n");

    r = invoke({"count", fixture("fig1.pb.html")});
    CHECK(r.out == "20\n");

    r = invoke({"enumerate", fixture("induction.pb.html")});
    CHECK(r.code == cli::kSuccess);
    CHECK(r.out == "n1,b1,b2,i1,i2,c\nn1,i1,i2,b1,b2,c\n");

    r = invoke({"enumerate", fixture("fig1.pb.html"), "--limit", "3"});
    CHECK(r.code == cli::kSuccess);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
    CHECK(r.out.starts_with("1,2,3,4,5,6,7\n"));
}

TEST_CASE("cli validate") {
    auto r = invoke({"validate", fixture("fig1.pb.html")});
    CHECK(r.code == cli::kSuccess);
    CHECK(r.out.find("I01") != std::string::npos);
    CHECK(r.out.ends_with("ok\n"));

    r = invoke({"validate", fixture("chain5.pb.html"), "--json"});
    CHECK(r.code == cli::kSuccess);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["ok"] == true);
    CHECK(doc["lint"].dump().find("W01") != std::string::npos);

    r = invoke({"validate", fixture("e03_cycle.pb.html")});
    CHECK(r.code == cli::kLintErrors);
    CHECK(r.out.find("E03") != std::string::npos);
    CHECK(r.out.ends_with("invalid\n"));
}

TEST_CASE("cli: invalid questions stop other commands") {
    auto r = invoke({"count", fixture("e01_unknown_reference.pb.html")});
    CHECK(r.code == cli::kLintErrors);
    CHECK(r.err.find("E01") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("cli render") {
    auto a = invoke({"render", fixture("fig1.pb.html"), "--seed", "42", "--json"});
    auto b = invoke({"render", fixture("fig1.pb.html"), "--seed", "42", "--json"});
    CHECK(a.code == cli::kSuccess);
    CHECK(a.out == b.out);
    const auto doc = nlohmann::json::parse(a.out);
    CHECK(doc["seed"] == "42");
    CHECK(doc["blocks"].size() == 7);
    CHECK(a.out.find("depends") == std::string::npos);

    auto text = invoke({"render", fixture("fig1.pb.html"), "--seed", "42"});
    CHECK(text.out.find("[00] ") != std::string::npos);
    CHECK(text.out.find("[06] ") != std::string::npos);
}

TEST_CASE("cli usage and IO errors") {
    CHECK(invoke({}).code == cli::kUsageOrIo);
    CHECK(invoke({"frobnicate"}).code == cli::kUsageOrIo);
    CHECK(invoke({"grade", fixture("fig1.pb.html")}).code == cli::kUsageOrIo);
    CHECK(invoke({"grade", fixture("fig1.pb.html"), "--ordering", "1", "--submission", "x"}).code ==
          cli::kUsageOrIo);
    CHECK(invoke({"render", fixture("fig1.pb.html")}).code == cli::kUsageOrIo);
    CHECK(invoke({"render", fixture("fig1.pb.html"), "--seed", "abc"}).code == cli::kUsageOrIo);

    auto missing = invoke({"count", "/nonexistent/q.pb.html"});
    CHECK(missing.code == cli::kUsageOrIo);
    CHECK(missing.err.find("cannot read") != std::string::npos);

    auto help = invoke({"--help"});
    CHECK(help.code == cli::kSuccess);
    CHECK(help.out.find("enumerate") != std::string::npos);
}
