#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graphprod {

/// Runs the workbench command line. `args` excludes the program name.
/// Exit codes: 0 success, 1 a verification failed, 2 usage, parse or
/// precondition error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphprod
