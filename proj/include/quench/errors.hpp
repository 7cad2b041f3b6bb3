#pragma once

#include <stdexcept>
#include <string>

namespace quench {

// Base of every error raised by the library. The CLI maps the concrete
// types onto exit codes, so new error kinds should derive from one of the
// two families below.
class QuenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: violated preconditions, out-of-domain arguments, mismatched
// shapes. Exit code 2.
class ParameterError : public QuenchError {
 public:
  using QuenchError::QuenchError;
};

class DomainError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class DimensionError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class InsufficientDataError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// The requested grid does not reach the point where a shooting profile
// is anchored.
class DomainTooShortError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Numerical failure of a well-posed request. Exit code 3.
class NumericalError : public QuenchError {
 public:
  using QuenchError::QuenchError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A monotone iterate increased: the discrete comparison principle is broken.
class SchemeIntegrityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class AccuracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InstabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SolverError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};


}  // namespace quench
