#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coarsekit_cli {

/// Runs one command line (without the program name). Reports go to `out`
/// unless -o is given; errors are a JSON object on `err`. Returns the exit
/// code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coarsekit_cli
