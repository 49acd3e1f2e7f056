#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gquant/errors.hpp"

namespace gquant::cli {

// Exit codes. Library errors map by kind; a failed residual check in a verb
// that validates its input also exits with kFailedCheck.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kUsage = 2;
inline constexpr int kBadGroup = 3;
inline constexpr int kBadInput = 4;
inline constexpr int kFailedCheck = 5;
inline constexpr int kStructural = 6;
inline constexpr int kUnsupported = 7;
inline constexpr int kNumerical = 8;

int exit_code(ErrorKind kind);

// Runs one command; args exclude the program name. Output goes to `out`
// unless --out names a file; errors are one JSON object on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gquant::cli
