#pragma once

#include <stdexcept>

namespace pseudoreg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input would exceed the configured enumeration bound.
class SizingError : public Error {
 public:
  using Error::Error;
};

// Caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Request falls outside the hypotheses under which a statement is known to hold
// (e.g. q < t for the hypersurface counts).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace pseudoreg
