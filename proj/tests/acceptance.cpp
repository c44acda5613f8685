// Acceptance suite: one PASS/FAIL line per criterion. The first argument is
// the path to the proofblocks executable, used for the cross-process check.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "proofblocks/grader.hpp"
#include "proofblocks/linter.hpp"
#include "proofblocks/qformat.hpp"
#include "proofblocks/report.hpp"

using namespace proofblocks;
using Tags = std::vector<Tag>;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream note;
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) note << what;
        ok = ok && cond;
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string capture(const std::string& command) {
    std::string out;
    if (FILE* pipe = ::popen(command.c_str(), "r")) {
        char buf[4096];
        std::size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
        if (::pclose(pipe) != 0) out = "<exit status nonzero>";
    }
    return out;
}

void fig1_accepts(Check& c) {
    const auto start = Clock::now();
    const auto q = fixtures::load("fig1.pb.html");
    for (const Tags& order : {Tags{"1", "2", "3", "4", "5", "6", "7"}, Tags{"4", "5", "6", "1", "2", "3", "7"},
                              Tags{"1", "4", "2", "3", "5", "6", "7"}}) {
        const auto out = grade(q, Submission{q.id, order});
        c.expect(out.status == GradeStatus::correct && out.score == Rational(1, 1), "an ordering was rejected");
    }
    const double t = seconds_since(start);
    c.expect(t < 1.0, "too slow");
    c.note << t << " s";
}

void fig1_count(Check& c) {
    const auto g = expand(fixtures::load("fig1.pb.html"));
    const auto count = count_orderings(g);
    const auto filtered = oracle::orderings_by_filter(g).size();
    c.expect(count == 20 && filtered == 20 && valid_orderings(g).size() == 20, "count mismatch");
    c.note << "count " << count << ", oracle " << filtered;
}

void validity_oracle(Check& c) {
    const auto start = Clock::now();
    gen::Rng rng(486);
    std::size_t perms = 0, mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = expand(gen::random_question(rng, {1, 7, 2, 2}));
        std::vector<std::size_t> idx(g.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        do {
            Tags seq;
            for (auto i : idx) seq.push_back(g.nodes()[i]);
            ++perms;
            if (is_valid_ordering(g, seq) != oracle::satisfies_definition(g, seq)) ++mismatches;
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
    const double t = seconds_since(start);
    c.expect(mismatches == 0, "mismatches found; ");
    c.expect(t < 60.0, "too slow; ");
    c.note << perms << " permutations, " << mismatches << " mismatches, " << t << " s";
}

void distance_oracle(Check& c) {
    const auto start = Clock::now();
    gen::Rng rng(487);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto q = gen::random_question(rng, {1, 6, 2, 2});
        const auto g = expand(q);
        Tags extras;
        for (const auto& b : q.blocks)
            if (b.is_distractor) extras.push_back(b.tag);
        extras.push_back("unknown");
        for (int s = 0; s < 50; ++s) {
            const auto seq = gen::random_submission(rng, g.nodes(), extras, 9);
            if (edit_distance(g, seq) != oracle::edit_distance(g, seq)) ++mismatches;
        }
    }
    const double t = seconds_since(start);
    c.expect(mismatches == 0, "mismatches found; ");
    c.expect(t < 120.0, "too slow; ");
    c.note << "5000 submissions, " << mismatches << " mismatches, " << t << " s";
}

void worked_numbers(Check& c) {
    const auto q = fixtures::load("fig1.pb.html");
    const auto g = expand(q);
    const Tags swapped{"2", "1", "3", "4", "5", "6", "7"}, prefix{"1", "2", "3"};
    const auto a = grade(q, g, swapped);
    const auto b = grade(q, g, prefix);
    c.expect(a.first_failure == 1u && a.edit_distance == 2 && a.score == Rational(5, 7) &&
                 oracle::edit_distance(g, swapped) == 2,
             "swapped ordering; ");
    c.expect(b.status == GradeStatus::incomplete && b.edit_distance == 4 && b.score == Rational(3, 7) &&
                 oracle::edit_distance(g, prefix) == 4,
             "prefix ordering; ");
    c.note << "swapped " << a.score.numerator() << "/" << a.score.denominator() << ", prefix "
           << b.score.numerator() << "/" << b.score.denominator();
}

void subproof_contiguity(Check& c) {
    const auto q = fixtures::load("induction.pb.html");
    const auto g = expand(q);
    const auto expected = oracle::orderings_by_filter(g);
    const auto got = valid_orderings(g);
    c.expect(expected.size() == 2 && got == expected, "orderings differ; ");
    for (const auto& order : expected)
        c.expect(grade(q, g, order).status == GradeStatus::correct, "valid ordering rejected; ");
    const auto bad = grade(q, g, Tags{"n1", "b1", "i1", "b2", "i2", "c"});
    c.expect(bad.status == GradeStatus::wrong_at_line && bad.first_failure == 3u, "interleaving accepted; ");
    c.note << got.size() << " orderings, interleaving fails at line " << bad.first_failure.value_or(0);
}

void linter_checks(Check& c) {
    auto codes = [](const std::vector<linter::LintFinding>& f, std::string_view code) {
        std::vector<std::string> messages;
        for (const auto& x : f)
            if (x.code == code) messages.push_back(x.message);
        return messages;
    };
    const auto chain = linter::lint(fixtures::load("chain5.pb.html"));
    const auto fig1 = linter::lint(fixtures::load("fig1.pb.html"));
    c.expect(codes(chain, "W01").size() == 1, "chain lacks W01; ");
    c.expect(codes(chain, "I01") == std::vector<std::string>{"1 valid ordering"}, "chain count; ");
    c.expect(codes(fig1, "W01").empty(), "fig1 has W01; ");

    gen::Rng rng(490);
    std::size_t flagged = 0, unsound = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = gen::random_graph(rng, gen::uniform(rng, 3, 8), 1, 0.5);
        const auto before = count_orderings(g);
        for (auto edge : linter::transitive_edges(g)) {
            ++flagged;
            auto edges = g.edges();
            edges.erase(std::find(edges.begin(), edges.end(), edge));
            if (count_orderings(ExpandedGraph(g.nodes(), edges, g.contiguity_sets())) != before) ++unsound;
        }
    }
    c.expect(unsound == 0, "W02 edge changed the count; ");
    c.note << flagged << " redundant edges checked, " << unsound << " unsound";
}

void performance(Check& c) {
    gen::Rng rng(491);
    double worst_distance = 0, worst_count = 0;
    int graphs = 0;
    while (graphs < 5) {
        const auto q = gen::random_question(rng, {18, 18, 2, 2});
        if (q.groups.size() != 2) continue;
        ++graphs;
        const auto g = expand(q);
        auto seq = g.nodes();
        std::shuffle(seq.begin(), seq.end(), rng);

        auto start = Clock::now();
        const auto d = edit_distance(g, seq);
        worst_distance = std::max(worst_distance, seconds_since(start));
        start = Clock::now();
        const auto n = count_orderings(g);
        worst_count = std::max(worst_count, seconds_since(start));
        c.expect(d <= 2 * g.size() && (n > 0) == (valid_orderings(g, 1).size() == 1), "inconsistent result; ");
    }
    c.expect(worst_distance < 5.0 && worst_count < 5.0, "too slow; ");
    c.note << "worst edit_distance " << worst_distance << " s, worst count " << worst_count << " s";
}

void determinism(Check& c, const std::string& tool) {
    const auto q = fixtures::load("fig1.pb.html");
    const auto command = "'" + tool + "' render '" + fixtures::path("fig1.pb.html") + "' --seed 42 --json";
    const auto first = capture(command), second = capture(command);
    const auto in_process = report::to_json(qformat::render_student_view(q, 42)).dump() + "\n";
    c.expect(!first.empty() && first == second, "process runs differ; ");
    c.expect(first == in_process, "process output differs from library; ");

    gen::Rng rng(492);
    std::size_t failures = 0;
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t seed = rng();
        const auto view = qformat::render_student_view(q, seed);
        std::vector<std::string> ids;
        for (const auto& b : view.blocks) ids.push_back(b.render_id);
        std::shuffle(ids.begin(), ids.end(), rng);
        const auto tags = qformat::resolve_ordering(q, seed, ids);
        for (std::size_t k = 0; k < ids.size(); ++k) {
            const auto shown = std::find_if(view.blocks.begin(), view.blocks.end(),
                                            [&](const auto& b) { return b.render_id == ids[k]; });
            if (q.find_block(tags[k])->text != shown->text) ++failures;
        }
    }
    c.expect(failures == 0, "resolve is not the inverse of render; ");
    c.note << first.size() << " bytes identical across runs, 100 seeds resolved";
}

void parser_codes(Check& c) {
    const std::pair<const char*, const char*> cases[] = {
        {"E01", "e01_unknown_reference.pb.html"}, {"E02", "e02_duplicate_tag.pb.html"},
        {"E03", "e03_cycle.pb.html"},             {"E04", "e04_distractor_dependency.pb.html"},
        {"E05", "e05_nested_group.pb.html"},      {"E06", "e06_unclosed_answer.pb.html"},
        {"E07", "e07_no_required_blocks.pb.html"},
    };
    for (const auto& [code, file] : cases) {
        const auto parsed = qformat::parse_question(fixtures::read(file), "fixture");
        std::set<std::string> errors;
        for (const auto& f : parsed.findings)
            if (f.severity == qformat::Severity::error) errors.insert(f.code);
        if (errors != std::set<std::string>{code} || parsed.ok()) {
            c.expect(false, std::string(file) + " does not yield exactly " + code + "; ");
        }
    }
    const auto q = fixtures::load("fig1.pb.html");
    const auto again = qformat::parse_question(qformat::to_markup(q), q.id);
    c.expect(again.ok() && *again.question == q, "fig1 does not round-trip; ");
    c.note << "7 codes, fig1 round-trip";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-proofblocks>\n";
        return 2;
    }
    const std::string tool = argv[1];

    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
        {"fig1 alternative orderings accepted", fig1_accepts},
        {"fig1 has 20 valid orderings", fig1_count},
        {"validity matches the definition on random questions", validity_oracle},
        {"edit distance matches brute force", distance_oracle},
        {"worked scores 5/7 and 3/7", worked_numbers},
        {"subproof contiguity", subproof_contiguity},
        {"linter W01, count and W02 soundness", linter_checks},
        {"18-node exact distance and count under 5 s", performance},
        {"student view determinism and round trip", [&](Check& c) { determinism(c, tool); }},
        {"parser error codes and canonical round trip", parser_codes},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what() + "; ");
        }
        failed += c.ok ? 0 : 1;
        std::cout << (c.ok ? "PASS" : "FAIL") << "  [" << (i + 1 < 10 ? "0" : "") << i + 1 << "] "
                  << criteria[i].first << " (" << c.note.str() << ")" << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
