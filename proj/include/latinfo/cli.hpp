#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latinfo::cli {

/// Runs the command line (without the program name). Returns the process exit code:
/// 0 ok, 1 validation failure, 2 input error, 3 estimation precondition error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latinfo::cli
