#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padsol::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kParseError = 1;
inline constexpr int kPrecondition = 2;
inline constexpr int kNonIntegral = 3;
inline constexpr int kSelftestFailed = 4;

/// Entry point of the `padsol` tool. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padsol::cli
