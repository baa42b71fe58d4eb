#pragma once

#include <stdexcept>
#include <string>

namespace pollard {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed literal, out-of-range index, violated operation precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Two operands were built over different groups.
class GroupMismatch : public Error {
 public:
  using Error::Error;
};

// A configured size limit (group order, lattice order, sweep volume) was hit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// Something that cannot happen by construction happened anyway.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace pollard
