#ifndef SENTINF_TOOLS_CLI_HPP
#define SENTINF_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace sentinf::cli {

/// Exit statuses. Poor metrics never produce a failure status.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 2;   // bad flags, paths, configuration or input format
inline constexpr int kInternalError = 3;

/// Runs the command line `args` (without the program name). Results and
/// tables go to `out`; diagnostics and JSON-lines logs go to `err` unless
/// --log-file redirects the logs.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sentinf::cli

#endif  // SENTINF_TOOLS_CLI_HPP
