#pragma once

#include <source_location>
#include <stdexcept>
#include <string>

namespace padic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied parameters (non-prime p, a >= d, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A phase violates the (b-1)*alpha not in Z hypothesis.
class DegeneratePhaseError : public Error {
 public:
  using Error::Error;
};

/// A configured size, memory, or candidate cap would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Never a user error: it means an arithmetic
/// bug or a result contradicting a proven statement.
class InternalError : public Error {
 public:
  using Error::Error;
};

inline void ensure(bool condition, const std::string& what,
                   std::source_location loc = std::source_location::current()) {
  if (!condition) {
    throw InternalError(std::string(loc.file_name()) + ":" + std::to_string(loc.line()) +
                        ": invariant violated: " + what);
  }
}

inline void require(bool condition, const std::string& what) {
  if (!condition) throw ParameterError(what);
}

}  // namespace padic
