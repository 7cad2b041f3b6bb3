#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quench {

inline constexpr const char* kProgramName = "quench-patterns";

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParameter = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitInconclusive = 4;

std::string version_string();

// argv excludes the program name. Summaries and help go to `out`, messages
// to `err`; CSV goes to --out, or to `out` when --out is absent.
int parse_and_dispatch(const std::vector<std::string>& argv, std::ostream& out,
                       std::ostream& err);

}  // namespace quench
