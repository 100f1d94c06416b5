#pragma once

#include <stdexcept>
#include <string>

namespace imlab {

// Error taxonomy shared by all modules. The CLI maps these onto exit codes.
struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidStateError : std::runtime_error {
  explicit InvalidStateError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidInputError : std::runtime_error {
  explicit InvalidInputError(const std::string& what) : std::runtime_error(what) {}
};

struct ResourceLimitError : std::runtime_error {
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace imlab
