#pragma once

#include <stdexcept>
#include <string>

namespace screwsr {

/// Thrown when an argument violates an operation's precondition or a domain
/// type's invariant.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerically recomputed witness disagrees with the value it
/// is supposed to certify.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input files (CLSpectrum JSON, spectrum CSV/JSON).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace detail
}  // namespace screwsr
