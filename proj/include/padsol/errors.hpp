#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace padsol {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ContextMismatch : public Error {
 public:
  ContextMismatch() : Error("operands live in different p-adic contexts") {}
};

class DivisionByZeroRep : public Error {
 public:
  DivisionByZeroRep() : Error("division by an element whose representative is 0") {}
};

/// v_p(a) < v_p(b) in a fixed-precision division a/b.
class NonIntegralQuotient : public Error {
 public:
  using Error::Error;
  NonIntegralQuotient() : Error("quotient is not p-integral") {}
};

/// Antiderivative coefficient at t^index is not p-integral.
class NonIntegralCoefficient : public Error {
 public:
  explicit NonIntegralCoefficient(std::size_t index)
      : Error("coefficient of t^" + std::to_string(index) + " is not p-integral"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class NonUnitConstantTerm : public Error {
 public:
  NonUnitConstantTerm() : Error("constant term is not a unit") {}
};

class EvenPrime : public Error {
 public:
  EvenPrime() : Error("operation requires p != 2") {}
};

class BadConstantTerm : public Error {
 public:
  using Error::Error;
  BadConstantTerm() : Error("constant term must be 1") {}
};

class KappaTooSmall : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (series files, inline expressions, flags).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace padsol
