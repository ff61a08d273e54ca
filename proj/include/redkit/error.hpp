#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace redkit {

// Every failure the library reports carries a stable machine-readable kind
// ("undefined-transition", "syntax-error", ...) next to the human message.
// The CLI maps kinds to exit codes; tests match on them.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

}  // namespace redkit
