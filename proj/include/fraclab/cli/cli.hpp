#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fraclab::cli {

/// Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
enum ExitCode { kOk = 0, kUsage = 2, kNumerical = 3 };

/// Runs one fraclab invocation; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fraclab::cli
