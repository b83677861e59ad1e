#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rmtl::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kData = 3, kNumeric = 4 };

/// Runs the tool with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmtl::cli
