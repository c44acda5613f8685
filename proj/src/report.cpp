#include "proofblocks/report.hpp"

namespace proofblocks::report {

nlohmann::json to_json(const GradeOutcome& outcome) {
    nlohmann::json doc;
    doc["status"] = std::string(to_string(outcome.status));
    if (outcome.first_failure) doc["first_failure"] = *outcome.first_failure;
    doc["edit_distance"] = outcome.edit_distance;
    doc["score"] = outcome.score.value();
    doc["score_numerator"] = outcome.score.numerator();
    doc["score_denominator"] = outcome.score.denominator();
    return doc;
}

nlohmann::json to_json(const qformat::StudentView& view) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : view.blocks) blocks.push_back({{"render_id", b.render_id}, {"text", b.text}});
    return {{"question_id", view.question_id},
            {"seed", std::to_string(view.seed)},
            {"prompt", view.prompt},
            {"blocks", std::move(blocks)}};
}

nlohmann::json to_json(const qformat::ParseFinding& finding) {
    return {{"severity", std::string(qformat::to_string(finding.severity))},
            {"code", finding.code},
            {"line", finding.line},
            {"message", finding.message}};
}

nlohmann::json to_json(const linter::LintFinding& finding) {
    return {{"severity", std::string(linter::to_string(finding.severity))},
            {"code", finding.code},
            {"subject", finding.subject},
            {"message", finding.message}};
}

nlohmann::json validation_report(const std::string& id,
                                 const std::vector<qformat::ParseFinding>& parse,
                                 const std::vector<linter::LintFinding>& lint) {
    nlohmann::json doc{{"question", id},
                       {"parse", nlohmann::json::array()},
                       {"lint", nlohmann::json::array()}};
    bool ok = true;
    for (const auto& f : parse) {
        doc["parse"].push_back(to_json(f));
        ok = ok && f.severity != qformat::Severity::error;
    }
    for (const auto& f : lint) doc["lint"].push_back(to_json(f));
    doc["ok"] = ok && !linter::has_errors(lint);
    return doc;
}

}  // namespace proofblocks::report
