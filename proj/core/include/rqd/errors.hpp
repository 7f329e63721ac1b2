#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rqd {

// precondition violation on an operator argument: dimension mismatch,
// non-Hermitian input, negative spectrum where PSD is required
struct InvalidOperatorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// a numerical stage that cannot deliver its contract; carries the stage name
// so a driver can report where a pipeline died
struct NumericalError : std::runtime_error {
  std::string stage;
  NumericalError(std::string where, const std::string& what_arg)
      : std::runtime_error(where + ": " + what_arg), stage(std::move(where)) {}
};

// violated physical-state constraint; `constraint` is a stable identifier
// (e.g. "delta_bound"), the message carries the numbers
struct ConstraintError : std::invalid_argument {
  std::string constraint;
  ConstraintError(std::string name, const std::string& what_arg)
      : std::invalid_argument(what_arg), constraint(std::move(name)) {}
};

// malformed or inconsistent experiment configuration
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rqd
