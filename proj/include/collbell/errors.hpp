#pragma once

#include <stdexcept>
#include <string>

namespace collbell {

// Bad arguments (out-of-range parameters, dimension mismatches, malformed
// specs) are reported as std::invalid_argument. The two classes below cover
// the remaining failure modes the CLI maps onto distinct exit codes.

/// A problem size exceeded one of the configured memory/enumeration guards.
class GuardExceeded : public std::length_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::length_error(what) {}
};

/// A numerical invariant failed (non-Hermitian input, lost positivity, ...).
class NumericFailure : public std::runtime_error {
 public:
  explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace collbell
