#pragma once

#include <cstdio>
#include <string>

namespace ttanova {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

// Level comes from the TTANOVA_LOG environment variable
// (error | info | debug), read once. Default: error.
LogLevel log_level();

namespace detail {
void log_line(LogLevel level, const std::string& msg);
}

inline void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) detail::log_line(LogLevel::Info, msg);
}

inline void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::Debug) detail::log_line(LogLevel::Debug, msg);
}

}  // namespace ttanova
