#include "ttanova/log.hpp"

#include <cstdlib>
#include <cstring>
#include <mutex>

namespace ttanova {

LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("TTANOVA_LOG");
    if (env == nullptr) return LogLevel::Error;
    if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
    if (std::strcmp(env, "info") == 0) return LogLevel::Info;
    return LogLevel::Error;
  }();
  return level;
}

namespace detail {

void log_line(LogLevel level, const std::string& msg) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::fprintf(stderr, "[%s] %s\n", level == LogLevel::Debug ? "debug" : "info",
               msg.c_str());
}

}  // namespace detail
}  // namespace ttanova
