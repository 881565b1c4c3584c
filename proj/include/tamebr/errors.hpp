#pragma once

#include <stdexcept>
#include <string>

namespace tamebr {

// Root of the library's error taxonomy. Every throw below carries a
// human-readable message describing which requirement failed.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Mismatched ambient rank / matrix shape.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An element or group that was required to lie inside another does not.
class ContainmentError : public Error {
 public:
  using Error::Error;
};

// An operation required two orders to be coprime and they are not.
class CoprimalityError : public Error {
 public:
  using Error::Error;
};

// Exact integer arithmetic would leave the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Malformed textual/JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A structural consistency check on input data failed.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The requested object provably does not exist.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A search or enumeration exceeded its configured bound without deciding.
class BoundError : public Error {
 public:
  using Error::Error;
};

// An internal structural invariant that should be unreachable was violated.
class StructureError : public Error {
 public:
  using Error::Error;
};

// A documented operation precondition was not met by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace tamebr
