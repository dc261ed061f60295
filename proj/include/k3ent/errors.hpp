#pragma once

#include <stdexcept>
#include <string>

namespace k3ent {

/// Raised when an argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a computed object fails an exact self-check (isometry test,
/// witness substitution, determinant bookkeeping). Indicates a bug.
class InvariantViolation : public std::logic_error {
public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

inline void ensure(bool condition, const std::string& message) {
  if (!condition) throw InvariantViolation(message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidInput(message);
}

} // namespace k3ent
