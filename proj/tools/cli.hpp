#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fenc::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs the `fenc` command line. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "25MHz", "50 MHz", "2.5e7", "1GHz", ... into hertz.
double parse_frequency(const std::string& text);

}  // namespace fenc::cli
