#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Elements of two different spaces were combined.
class CrossSpaceError : public Error {
 public:
  CrossSpaceError() : Error("elements belong to different Riesz spaces") {}
};

/// An error-tracked element is too coarse to answer at the requested precision.
class UnknownAtTolerance : public Error {
 public:
  using Error::Error;
};

/// The positivity margin of a point state could not be kept strictly positive.
class MarginCollapse : public Error {
 public:
  using Error::Error;
};

/// No cover certificate exists below the instance search ceiling.
class CertificateMissing : public Error {
 public:
  using Error::Error;
};

class NonCommutingError : public PreconditionError {
 public:
  NonCommutingError(std::size_t i, std::size_t j, std::size_t row, std::size_t col,
                    const std::string& entry)
      : PreconditionError("generators " + std::to_string(i) + " and " + std::to_string(j) +
                          " do not commute: commutator entry (" + std::to_string(row) + "," +
                          std::to_string(col) + ") = " + entry),
        first(i),
        second(j) {}
  std::size_t first;
  std::size_t second;
};

}  // namespace riesz
