#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hierstat::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kNumerical = 3,
  kIo = 4,
};

/// Entry point of the `hierstat` tool. `args` excludes the program name.
/// Results go to `out` (or to files named by flags), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hierstat::cli
