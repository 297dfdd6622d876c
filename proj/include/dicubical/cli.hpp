#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dicubical {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_data = 2, exit_scale = 3 };

/// Runs the `dicubical` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dicubical
