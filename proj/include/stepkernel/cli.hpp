#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stepkernel {

// Command-line entry point; `args` excludes the program name. Writes the JSON
// report to `out` and a human-readable summary to `err`. Returns the process
// exit code: 0 = yes / success, 1 = decision answered "no", 2 = invalid
// input, 3 = budget exceeded or failed to converge.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stepkernel
