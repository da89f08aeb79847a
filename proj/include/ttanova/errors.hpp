#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ttanova {

// Typed runtime failure. `kind` is a stable machine-readable name
// (e.g. "RankDeficient", "SizeOverflow") that the CLI prints and maps
// to exit code 2.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

[[noreturn]] inline void fail(std::string kind, const std::string& msg) {
  throw Error(std::move(kind), msg);
}

}  // namespace ttanova
