// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace monobox {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Conditional query on an interval that carries no mass.
class DegenerateInterval : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Function oracle returned a value outside [0,1] or broke monotonicity.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration, unknown function name, bad CLI input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A box cannot be split further at double precision.
class ResolutionExhausted : public Error {
 public:
  using Error::Error;
};

/// Error metering requested for a function without exact metadata.
class Unmeterable : public Error {
 public:
  using Error::Error;
};

/// Problem size exceeds what an exact oracle can handle.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace monobox
