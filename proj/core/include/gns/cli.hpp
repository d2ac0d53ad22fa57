#pragma once

#include <string>
#include <vector>

namespace gns {

// Runs the command-line tool on the given arguments (without argv[0]).
// Returns the process exit code: 0 on success, 1 on usage or input errors,
// 2 when a solve finishes without converging.
int run_cli(const std::vector<std::string>& args);

}  // namespace gns
