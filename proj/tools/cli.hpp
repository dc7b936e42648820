#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffd::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kFormat = 3,
  kContract = 4,
  kInternal = 5,
};

// Runs one `ffd` invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffd::cli
