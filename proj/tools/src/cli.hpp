#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pmcount::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kNotInClass = 3,
  kInvalidDecomposition = 4,
  kConsistency = 5,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pmcount::cli
