#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace condtree {

/// Exit statuses of `run`.
enum ExitStatus : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// Command-line entry point; `args` excludes the program name. Subcommands:
/// sample, verify, quad, snake, compare. Reports go to `out` unless --out
/// names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace condtree
