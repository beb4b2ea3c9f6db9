#include "pairplan/logging.hpp"

#include <cstdlib>
#include <iostream>

namespace pairplan {

static LogLevel parse_level() {
    const char* env = std::getenv("PAIRPLAN_LOG");
    if (!env) return LogLevel::warn;
    const std::string v(env);
    if (v == "quiet" || v == "0") return LogLevel::quiet;
    if (v == "warn" || v == "1") return LogLevel::warn;
    if (v == "info" || v == "2") return LogLevel::info;
    if (v == "debug" || v == "3") return LogLevel::debug;
    return LogLevel::warn;
}

LogLevel log_level() {
    static const LogLevel level = parse_level();
    return level;
}

static void emit(LogLevel at, const char* tag, const std::string& msg) {
    if (static_cast<int>(log_level()) >= static_cast<int>(at)) {
        std::cerr << tag << msg << '\n';
    }
}

void log_warn(const std::string& msg) { emit(LogLevel::warn, "[pairplan] warning: ", msg); }
void log_info(const std::string& msg) { emit(LogLevel::info, "[pairplan] ", msg); }
void log_debug(const std::string& msg) { emit(LogLevel::debug, "[pairplan] debug: ", msg); }

}  // namespace pairplan
