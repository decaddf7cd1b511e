#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcorr {

/// Exit codes of the command line tool.
enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitUsage = 2 };

/// Entry point of the `qcorr` tool. Reports go to `out`, diagnostics to
/// `err`. args[0] is the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcorr
