#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dichro {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitBudget = 2,
    kExitRejected = 3,  // check found an improper coloring, or verify-reduction failed
};

/// Runs the command line `dichro <args...>` (args exclude the program name).
/// Structured results are written to `out` as one JSON document; diagnostics
/// go to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dichro
