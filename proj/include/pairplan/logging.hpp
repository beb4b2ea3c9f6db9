#pragma once

#include <string>

namespace pairplan {

enum class LogLevel { quiet = 0, warn = 1, info = 2, debug = 3 };

// Level comes from PAIRPLAN_LOG (quiet|warn|info|debug), default warn.
LogLevel log_level();

void log_warn(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace pairplan
