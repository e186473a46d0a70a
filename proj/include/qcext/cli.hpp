#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcext::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitFail = 2;

/// Runs one command line (args[0] is the program name). Returns 0 on
/// pass/certified, 2 on criterion failure or a non-certified build, 1 on
/// usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcext::cli
