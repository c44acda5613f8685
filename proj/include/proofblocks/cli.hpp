#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace proofblocks::cli {

// Process exit codes.
enum ExitStatus : int {
    kSuccess = 0,
    kIncorrect = 1,    // grade: the ordering is not a correct proof
    kLintErrors = 2,   // the question has error findings
    kUsageOrIo = 3,
};

// Runs one command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace proofblocks::cli
