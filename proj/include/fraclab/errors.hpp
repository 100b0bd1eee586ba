#pragma once

#include <stdexcept>
#include <string>

namespace fraclab {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad input the caller could have validated: out-of-range parameters,
/// non-finite arguments, violated preconditions. The CLI maps these to exit 2.
class InputError : public Error {
public:
  using Error::Error;
};

class DomainError : public InputError {
public:
  using InputError::InputError;
};

class ParameterError : public InputError {
public:
  using InputError::InputError;
};

class PreconditionError : public InputError {
public:
  using InputError::InputError;
};

/// A Gamma factor hit a pole. `argument()` names the offending expression.
class SingularParameterError : public InputError {
public:
  SingularParameterError(std::string argument, double value);
  const std::string& argument() const noexcept { return argument_; }
  double value() const noexcept { return value_; }

private:
  std::string argument_;
  double value_;
};

/// Numerical failure inside a solver. The CLI maps these to exit 3.
class NumericalError : public Error {
public:
  using Error::Error;
};

class GridResolutionError : public NumericalError {
public:
  GridResolutionError(const std::string& what, int suggested_points)
      : NumericalError(what), suggested_points_(suggested_points) {}
  int suggested_points() const noexcept { return suggested_points_; }

private:
  int suggested_points_;
};

class RingingError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class StepSizeError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class AnnulusError : public InputError {
public:
  using InputError::InputError;
};

/// Two values for the same exponent disagree (e.g. a supplied delta versus the
/// hyperscaling value).
class ConsistencyError : public InputError {
public:
  using InputError::InputError;
};

class ExponentError : public InputError {
public:
  using InputError::InputError;
};

}  // namespace fraclab
