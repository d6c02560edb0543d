#pragma once

#include <stdexcept>
#include <string>

namespace lcpat {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPosition : public Error {
 public:
  using Error::Error;
};

class SortMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class DuplicateDeclaration : public Error {
 public:
  using Error::Error;
};

/// Raised when a complement would have to enumerate an infinite set of values.
class InfiniteComplement : public Error {
 public:
  using Error::Error;
};

class NotConstructorTerm : public Error {
 public:
  using Error::Error;
};

class NonGroundTerm : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class SolverUnavailable : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

class UnsupportedSymbol : public Error {
 public:
  using Error::Error;
};

/// A satisfiability query came back unknown where a definite answer was needed.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

class DivisorNotLinear : public Error {
 public:
  using Error::Error;
};

class DividendNotValueFree : public Error {
 public:
  using Error::Error;
};

class ValidationFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace lcpat
