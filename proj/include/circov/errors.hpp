#pragma once

#include <stdexcept>
#include <string>

namespace circov {

/// Raised when an interval guard cannot decide a comparison at the working
/// precision. Results are never silently rounded.
class PrecisionExhausted : public std::runtime_error {
 public:
  explicit PrecisionExhausted(const std::string& what)
      : std::runtime_error("precision exhausted: " + what) {}
};

/// A documented hypothesis of an operation does not hold. `side()` names the
/// failing part, e.g. "lower" or "upper" for a two-sided condition.
class PreconditionViolation : public std::invalid_argument {
 public:
  PreconditionViolation(const std::string& side, const std::string& what)
      : std::invalid_argument("precondition violated (" + side + "): " + what), side_(side) {}
  const std::string& side() const noexcept { return side_; }

 private:
  std::string side_;
};

/// Malformed or out-of-range input.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation would exceed the configured enumeration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace circov
