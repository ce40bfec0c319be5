#pragma once

#include <stdexcept>
#include <string>

namespace isovolc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an exact division by the residue prime would leave fewer
// digits than the operation needs to stay exact.
struct PrecisionExhausted : Error {
  using Error::Error;
};

struct InvalidParams : Error {
  using Error::Error;
};

struct InvalidSymbol : Error {
  using Error::Error;
};

struct UnsupportedConfig : Error {
  using Error::Error;
};

struct NotAnOrder : Error {
  using Error::Error;
};

struct NotSelfDual : Error {
  using Error::Error;
};

struct MaxRMRequired : Error {
  using Error::Error;
};

struct AlreadyMaxRM : Error {
  using Error::Error;
};

struct NoAscendingNeighbor : Error {
  using Error::Error;
};

struct NoFrobeniusConfigured : Error {
  using Error::Error;
};

struct NotIsotropic : Error {
  using Error::Error;
};

struct NoDecreasingNeighbor : Error {
  using Error::Error;
};

struct ValidationFailed : Error {
  using Error::Error;
};

struct InputShapeMismatch : Error {
  using Error::Error;
};

// A computation disagreed with a structural identity that the library
// treats as always true; indicates a bug, never a data problem.
struct AssertionFailure : Error {
  using Error::Error;
};

inline void check(bool cond, const std::string& what) {
  if (!cond) throw AssertionFailure(what);
}

}  // namespace isovolc
