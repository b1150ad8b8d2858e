#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bott::cli {

// Exit codes.  0/1/2 mirror ISO / NON_ISO / UNKNOWN (and true / false).
inline constexpr int kOk = 0;
inline constexpr int kFalse = 1;
inline constexpr int kUnknown = 2;
inline constexpr int kUsage = 64;
inline constexpr int kDataError = 65;
inline constexpr int kNoInput = 66;
inline constexpr int kInternal = 70;

// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

// Built-in regression table for the worked examples; returns an exit code.
int paper_check(std::ostream& out);

}  // namespace bott::cli
