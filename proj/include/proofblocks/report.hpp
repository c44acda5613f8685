#pragma once

// JSON documents shared by the command line and the HTTP service.

#include <vector>

#include <json.hpp>

#include "proofblocks/grader.hpp"
#include "proofblocks/linter.hpp"
#include "proofblocks/qformat.hpp"

namespace proofblocks::report {

// {"status", "first_failure"?, "edit_distance", "score", "score_numerator",
//  "score_denominator"}; score is the decimal form of the exact fraction.
nlohmann::json to_json(const GradeOutcome& outcome);

// Seeds are written as decimal strings so 64-bit values survive JavaScript.
nlohmann::json to_json(const qformat::StudentView& view);

nlohmann::json to_json(const qformat::ParseFinding& finding);
nlohmann::json to_json(const linter::LintFinding& finding);

// {"question": id, "ok": bool, "parse": [...], "lint": [...]}
nlohmann::json validation_report(const std::string& id,
                                 const std::vector<qformat::ParseFinding>& parse,
                                 const std::vector<linter::LintFinding>& lint);

}  // namespace proofblocks::report
