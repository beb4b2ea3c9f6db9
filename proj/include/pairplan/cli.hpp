#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pairplan {

// Runs one batch command. Returns the process exit code: 0 on success,
// 2 for argument/config validation failures, 3 for I/O failures.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pairplan
