#pragma once

#include <stdexcept>
#include <string>

namespace twostate {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input-side failures: the caller handed over something outside the contract.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

class InvalidWaveform : public Error {
 public:
  using Error::Error;
};

class SingularControl : public Error {
 public:
  using Error::Error;
};

/// Failures of the numerical machinery itself (CLI exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonConvergent : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UnitarityViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Configuration failures (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ValidationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Sink or source failure (CLI exit code 4).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace twostate
