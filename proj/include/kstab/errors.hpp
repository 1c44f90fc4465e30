#pragma once

#include <stdexcept>
#include <string>

namespace kstab {

/// Malformed input: parse failures, ring mismatches, violated preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured computation cap (pair count, degree, window) was hit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed; indicates a bug or a convention clash.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kstab
