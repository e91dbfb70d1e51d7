#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace imark::cli {

enum ExitCode : int {
    kOk = 0,
    kMismatch = 1,
    kUsage = 2,
    kResource = 3,
};

/// Runs one command line. Data goes to `out`, progress and diagnostics to
/// `err`; `in` feeds the interactive play loop.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace imark::cli
