#pragma once

#include <iosfwd>

namespace kentropy::cli {

/// Exit codes of the `kentropy` tool.
enum ExitCode : int {
    kOk = 0,     ///< computed; analysis findings such as infeasibility still exit 0
    kInput = 1,  ///< unreadable or invalid input data
    kUsage = 2,  ///< bad command line
};

/// Runs the tool with `argv[0]` as program name. Results go to `out` only when
/// the whole command succeeded; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kentropy::cli
