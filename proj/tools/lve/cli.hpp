#pragma once

#include <string>
#include <vector>

namespace lve::cli {

// Full CLI entry point, callable in-process: args are everything after
// the program name. Returns the process exit code (0 pass, 1 scientific
// failure, 2 resource failure, 64 usage or config error).
int run(const std::vector<std::string>& args);

}  // namespace lve::cli
