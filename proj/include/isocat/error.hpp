#pragma once

#include <stdexcept>
#include <string>

namespace isocat {

/// Input violates a mathematical precondition (degenerate form, non-cocycle, ...).
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its configured size budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed external input (TOML/JSON files, unknown names).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultBudget = 2'000'000;

}  // namespace isocat
