#pragma once

#include <stdexcept>
#include <string>

namespace gct {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in different ambient spaces (variable counts, matrix shapes,
// partition sizes).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A parameter lies outside the range an operation supports.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The requested computation exceeds a configured size limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Malformed input files.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace gct
