#pragma once

#include <string>
#include <vector>

namespace invx {

/// Dispatches a CLI invocation. Returns the process exit code:
/// 0 success/pass, 1 property violation or negative verdict, 2 input error.
int run_cli(const std::vector<std::string>& args);

}  // namespace invx
