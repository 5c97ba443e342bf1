#pragma once

#include <ostream>

namespace cmdp {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitIo = 2 };

/// Runs the `cmdp` command line with the given streams. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cmdp
