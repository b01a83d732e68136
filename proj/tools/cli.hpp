#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcf::cli {

/// Stable exit codes of the pcf tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,        ///< malformed flags or an empty grid
  kExitDomain = 2,       ///< (a, z) outside the supported domain or U not representable
  kExitConvergence = 3,  ///< a series or quadrature failed outright
  kExitUnwritable = 4,   ///< output file could not be opened
  kExitSelftest = 5,     ///< sweep residual above 5e-13 or evaluation failures
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// Normal output goes to `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

}  // namespace pcf::cli
