#pragma once

#include <stdexcept>
#include <string>

namespace momdwa {

/// Bad user-facing configuration: invalid bounds, parameters, config keys.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Objective evaluation could not produce a usable value.
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Time propagation produced non-finite amplitudes.
struct PropagationError : EvaluationError {
  using EvaluationError::EvaluationError;
};

/// Decision stage cannot proceed (e.g. empty repository).
struct DecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File input/output failure.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Violated internal contract; indicates a bug in the caller.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace momdwa
