#pragma once

#include <stdexcept>
#include <string>

namespace heron {

enum class ErrorKind {
  DimensionMismatch,
  ShapeMismatch,
  InvalidSet,
  InvalidParameter,
  Precondition,
  Infeasible,
  DegenerateConfiguration,
  UnsupportedReduction,
  Unsupported,
  NumericFailure,
  BudgetExceeded,
  Parse,
};

inline const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::DimensionMismatch: return "dimension mismatch";
  case ErrorKind::ShapeMismatch: return "shape mismatch";
  case ErrorKind::InvalidSet: return "invalid set";
  case ErrorKind::InvalidParameter: return "invalid parameter";
  case ErrorKind::Precondition: return "precondition violated";
  case ErrorKind::Infeasible: return "infeasible input";
  case ErrorKind::DegenerateConfiguration: return "degenerate configuration";
  case ErrorKind::UnsupportedReduction: return "unsupported reduction";
  case ErrorKind::Unsupported: return "unsupported";
  case ErrorKind::NumericFailure: return "numeric failure";
  case ErrorKind::BudgetExceeded: return "budget exceeded";
  case ErrorKind::Parse: return "parse error";
  }
  return "error";
}

/// Every failure raised by the library carries a kind so front ends can map
/// it to an exit status without string matching.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Raised by the solver when an objective or subgradient stops being finite.
class NumericFailure : public Error {
public:
  NumericFailure(long long iteration, const std::string &what)
      : Error(ErrorKind::NumericFailure,
              what + " at iteration " + std::to_string(iteration)),
        iteration_(iteration) {}

  long long iteration() const noexcept { return iteration_; }

private:
  long long iteration_;
};

/// Raised when a configuration has x_i == y_j (to tolerance).
class DegenerateConfiguration : public Error {
public:
  DegenerateConfiguration(std::size_t i, std::size_t j)
      : Error(ErrorKind::DegenerateConfiguration,
              "points x_" + std::to_string(i + 1) + " and y_" + std::to_string(j + 1) +
                  " coincide"),
        i_(i), j_(j) {}

  std::size_t feasible_index() const noexcept { return i_; }
  std::size_t target_index() const noexcept { return j_; }

private:
  std::size_t i_, j_;
};

} // namespace heron
