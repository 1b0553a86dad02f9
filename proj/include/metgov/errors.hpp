#pragma once

#include <stdexcept>
#include <string>

namespace metgov {

// Bad space definitions, malformed configs, points outside the space.
// The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Violations of the epoch protocol itself (commit/reveal misuse, slot abuse,
// round overflow). The CLI maps this to exit code 3.
struct ProtocolError : std::runtime_error {
  explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace metgov
