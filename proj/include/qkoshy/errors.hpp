#pragma once

#include <stdexcept>
#include <string>

namespace qkoshy {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedDivisor : public Error {
 public:
  UnsupportedDivisor() : Error("divisor leading coefficient must be +1 or -1") {}
};

class NonMonicModulus : public Error {
 public:
  NonMonicModulus() : Error("modulus must be monic of degree >= 1") {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Raised when a brute-force request exceeds its desk-scale guard.
class ScaleLimit : public Error {
 public:
  ScaleLimit(const std::string& what, long requested, long limit)
      : Error(what + ": requested " + std::to_string(requested) + " exceeds scale limit " +
              std::to_string(limit)),
        requested_(requested),
        limit_(limit) {}
  long requested() const noexcept { return requested_; }
  long limit() const noexcept { return limit_; }

 private:
  long requested_;
  long limit_;
};

class MalformedLabel : public Error {
 public:
  using Error::Error;
};

class NoRepeatedPart : public Error {
 public:
  NoRepeatedPart() : Error("no part occurs with multiplicity >= 2") {}
};

/// A map produced an object outside its declared family.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class UnknownIdentity : public Error {
 public:
  explicit UnknownIdentity(const std::string& id) : Error("unknown identity: " + id) {}
};

}  // namespace qkoshy
