#pragma once

#include <stdexcept>
#include <string>

namespace olsen {

// Invalid user-supplied values: digits out of range, malformed schedules,
// vectors of the wrong length, out-of-window arguments.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A probability entry outside the open interval (0,1).
class ProbabilityEntryError : public InputError {
 public:
  using InputError::InputError;
};

// Probability entries that do not sum to 1 within tolerance.
class ProbabilitySumError : public InputError {
 public:
  using InputError::InputError;
};

// Two parameter groups that coincide as multisets, so every comparison
// polynomial built from them vanishes identically.
class DegeneratePairError : public InputError {
 public:
  using InputError::InputError;
};

// Iteration caps exceeded, singular systems, failed internal cross-checks.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace olsen
