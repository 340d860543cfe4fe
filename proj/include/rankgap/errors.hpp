#pragma once

#include <stdexcept>

namespace rankgap {

// Base class for every domain error this library raises. The CLI maps any
// Error to exit code 2 (bad input), as opposed to failed verification
// reports which map to exit code 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};
struct NonInvertible : Error {
  using Error::Error;
};
struct NotUnimodular : Error {
  using Error::Error;
};
struct OrderCapTooSmall : Error {
  using Error::Error;
};
struct NotCoprime : Error {
  using Error::Error;
};
struct InfiniteOrder : Error {
  using Error::Error;
};
struct PeriodsNotCoprime : Error {
  using Error::Error;
};
struct BadInterval : Error {
  using Error::Error;
};
struct NegativeDeterminant : Error {
  using Error::Error;
};
struct LogFailure : Error {
  using Error::Error;
};

}  // namespace rankgap
