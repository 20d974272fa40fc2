#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace converse::cli {

enum ExitStatus : int { kPass = 0, kFail = 1, kInputError = 2 };

/// Runs the converse13 command line; args excludes the program name.
/// Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace converse::cli
