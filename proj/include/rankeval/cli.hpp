#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rankeval::cli {

/// Entry point behind the `rankeval` executable. `args` excludes the program
/// name. Returns the process exit code: 0 success, 1 runtime failure, 2 usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rankeval::cli
