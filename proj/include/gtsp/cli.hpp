#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gtsp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSolve = 2;

/// Runs one command line (args[0] is the program name). "-" reads stdin.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gtsp
