#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rrtcut::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // verification failure or runtime error
inline constexpr int kExitUsage = 2;

/// Parses the command line, runs one subcommand and returns the exit status.
/// Text output that is not sent to a file goes to `out`; diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rrtcut::cli
