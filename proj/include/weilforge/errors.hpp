#pragma once

#include <stdexcept>
#include <string>

namespace weilforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A division that the construction guarantees to be exact left a remainder.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

class RequiresPositiveN : public Error {
 public:
  using Error::Error;
};

class WrongValuation : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NotCompliant : public Error {
 public:
  using Error::Error;
};

class QualityUnderflow : public Error {
 public:
  using Error::Error;
};

class QualityTooLow : public Error {
 public:
  using Error::Error;
};

class ZeroConstantTerm : public Error {
 public:
  using Error::Error;
};

class InfiniteValuation : public Error {
 public:
  using Error::Error;
};

class ExceptionalPolynomial : public Error {
 public:
  using Error::Error;
};

class TableMissing : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised when an invariant that the mathematics guarantees fails to hold.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace weilforge
