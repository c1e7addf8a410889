#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isingfix::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kLimit = 3 };

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace isingfix::cli
