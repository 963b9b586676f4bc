#pragma once

// Command-line front end. Kept in the library so tests can drive it
// without spawning processes.

#include <ostream>
#include <string>
#include <vector>

namespace ocw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool with `args` (program name first). Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ocw::cli
