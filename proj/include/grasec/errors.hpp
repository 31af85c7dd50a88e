#pragma once

#include <stdexcept>
#include <string>

namespace grasec {

/// Bad input: malformed spec strings, violated preconditions. CLI exit code 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two routes that must agree did not. CLI exit code 2.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Random sampling kept hitting degenerate configurations.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single degenerate sample; callers resample.
class DegenerateSample : public SamplingError {
 public:
  using SamplingError::SamplingError;
};

/// Brute-force enumeration would exceed the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace grasec
