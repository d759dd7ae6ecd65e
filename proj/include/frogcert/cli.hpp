#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace frogcert::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;   // oracle failure or runtime error
inline constexpr int kInvalid = 2;  // invalid input

/// Runs the command line `args` (args[0] is the program name). Data goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g, rejecting NaN and infinities.
std::string format_number(double x);

}  // namespace frogcert::cli
