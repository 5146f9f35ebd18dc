#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyac {

/// Bad argument to a constructor or builder (empty interval, N < 3, ratio <= 0, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A state handed to a right-hand side or stepper in the wrong representation.
class InvalidState : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Operation not available for the given grid (e.g. the reduced IMEX path on a nonuniform mesh).
class UnsupportedGrid : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Shooting bracket does not change sign.
class BracketFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Phase-plane integration diverged or stalled.
class IntegrationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear solve residual above tolerance; signals a broken assembly.
class LinearSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-range values during time stepping.
class BlowUp : public std::runtime_error {
 public:
  BlowUp(const std::string& what, std::size_t step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyac
