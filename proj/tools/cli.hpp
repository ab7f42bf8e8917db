#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adecodes {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitCheckFailed = 2, kExitResource = 3 };

/// Runs the tool on args (without the program name); files named "-" in
/// --dot/--csv go to out.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adecodes
