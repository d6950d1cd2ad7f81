#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace boolpart::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

/// Runs one command line (without the program name). Artifacts go to --out
/// files or to `out`; diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace boolpart::cli
