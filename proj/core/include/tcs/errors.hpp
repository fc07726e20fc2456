#pragma once

#include <stdexcept>
#include <string>

namespace tcs {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside an operation's contract (bad group, odd n where even is
/// required, non-cycle fundamental class, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The requested theorem machinery does not apply to the input. Distinguished
/// from InvalidInput so batch drivers can tabulate coverage.
class MethodInapplicable : public Error {
 public:
  using Error::Error;
};

/// An enumeration or table would exceed its configured size budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace tcs
