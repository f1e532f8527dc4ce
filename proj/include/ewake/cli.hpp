#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ewake::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitDomain = 4;

// Runs the tool on an argument list (without the program name). Data goes
// to `out` and the files under --out; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ewake::cli
