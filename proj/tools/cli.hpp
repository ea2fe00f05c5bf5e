#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace poslp::cli {

/// Exit codes of the command line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one CLI invocation. `args` excludes the program name. Reports and
/// CSV go to `out`; warnings and help text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace poslp::cli
