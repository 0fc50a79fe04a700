#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zrank {

// Runs the command line given args (without the program name), writing data
// to `out` and diagnostics to `err`.  Returns the process exit code:
//   0 success, 2 ingest/usage/validation error, 3 unknown institution,
//   4 degenerate test, 5 fewer than two institutions.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zrank
