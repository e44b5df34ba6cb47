#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wedge::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kResourceGuard = 3,
};

// Runs the wedgecode command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wedge::cli
