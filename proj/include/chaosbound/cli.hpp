#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chaosbound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

/// Entry point of the command-line tool. args[0] is the program name.
/// Report documents go to --output or, failing that, to `out`; messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chaosbound::cli
