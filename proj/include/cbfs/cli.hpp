#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cbfs {

// Runs one CLI invocation; args[0] is the program name. Returns the exit
// code: 0 success, 1 usage error, 2 data error.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cbfs
