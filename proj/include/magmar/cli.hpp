// Command-line surface. run_command is the whole application behind a
// testable function; main() forwards to it.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
#pragma once

#include <string>
#include <vector>

namespace magmar::cli {

int run_command(const std::vector<std::string>& args);

} // namespace magmar::cli
