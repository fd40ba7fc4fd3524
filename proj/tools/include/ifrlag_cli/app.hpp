#ifndef IFRLAG_CLI_APP_HPP
#define IFRLAG_CLI_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ifrlag/error.hpp"

namespace ifrlag::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,       // bad arguments, config, data or scenario
  kExitCalibration = 3, // anchor cannot be met
  kExitFit = 4,         // nothing to fit against
};

int exit_code_for(ErrorCode code) noexcept;

/// Runs the command line `args` (args[0] is the program name). Progress and
/// tables go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest text that reads back as the same double.
std::string format_number(double value);

}  // namespace ifrlag::cli

#endif  // IFRLAG_CLI_APP_HPP
