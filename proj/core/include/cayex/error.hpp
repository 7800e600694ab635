#pragma once

#include <stdexcept>
#include <string>

namespace cayex {

// Base class for every error raised by the library. The CLI maps the
// subclasses onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (degree mismatch, parse failure, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// The requested exact computation exceeds a configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class NotNormalError : public Error {
 public:
  using Error::Error;
};

class NotAbelianError : public Error {
 public:
  using Error::Error;
};

class NotSolvableError : public Error {
 public:
  using Error::Error;
};

class NotSymmetricError : public Error {
 public:
  using Error::Error;
};

// A certificate is missing, or a construction could not reach its target.
class CertificationError : public Error {
 public:
  using Error::Error;
};

// Integer multiplicities left the 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace cayex
