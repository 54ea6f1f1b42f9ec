#pragma once

#include <stdexcept>
#include <string>

namespace cdual {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Raised when exact integer arithmetic would leave the 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// F(sigma) is not in the column space of G(sigma); sigma lies outside S_a.
class ColumnSpaceViolation : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NoInteriorPoint : public Error {
 public:
  using Error::Error;
};

/// An exact symbolic identity failed to hold.
class IdentityViolation : public Error {
 public:
  using Error::Error;
};

class RootIsolationFailure : public Error {
 public:
  using Error::Error;
};

/// A closed-form dual was evaluated outside its feasible region.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

class NotConverged : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cdual
