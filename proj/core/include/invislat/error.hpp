#pragma once

#include <stdexcept>
#include <string>

namespace invislat {

/// Failure category; the CLI maps Parameter to exit code 2 and Numerical to 3.
enum class ErrorKind { Parameter, Numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(ErrorKind::Parameter, what) {}
};

class DimensionError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class ValidationError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class PreconditionError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class RealizationError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class SingularSeedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoSolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace invislat
