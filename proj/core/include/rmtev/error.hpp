#pragma once

#include <stdexcept>
#include <string>

namespace rmtev {

// Bad arguments or configuration: the caller can fix these.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to deliver its contract (no convergence,
// singular system, non-finite result). `operation()` names the routine.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string operation, const std::string& what)
      : std::runtime_error(operation + ": " + what), operation_(std::move(operation)) {}

  const std::string& operation() const noexcept { return operation_; }

 private:
  std::string operation_;
};

}  // namespace rmtev
