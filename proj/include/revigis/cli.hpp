#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace revigis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFindings = 2;

/// Runs `revigis <subcommand> ...`; `args` excludes the program name.
/// Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace revigis::cli
