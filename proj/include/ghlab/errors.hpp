#pragma once

#include <stdexcept>
#include <string>

namespace ghlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: out-of-range parameters, malformed files, violated preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A value failed the structural check of its type (SL2, SO(2,2), ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Base for failures of an iterative or numerical procedure.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NotHyperbolic : public Error {
 public:
  using Error::Error;
};

class RelatorSearchFailed : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NewtonDiverged : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

class NotOnPressureZero : public Error {
 public:
  using Error::Error;
};

class NotTangent : public Error {
 public:
  using Error::Error;
};

class GramSingular : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Cycle enumeration exceeded its budget.
class Overflow : public Error {
 public:
  using Error::Error;
};

}  // namespace ghlab
