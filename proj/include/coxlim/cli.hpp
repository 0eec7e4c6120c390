#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coxlim {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitCompute = 2 };

/// Runs one `coxeter-limits` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coxlim
