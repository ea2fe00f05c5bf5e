#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace poslp {

enum class ErrorKind {
  ZeroColumn,
  NonFinite,
  ParseError,
  NegativeEntry,
  ExplicitZero,
  DuplicateEntry,
  DimensionMismatch,
  EpsilonOutOfRange,
  NumericalOverflow,
  GradientBelowMinusOne,
  OutOfDomain,
  MonotonicityViolation,
  EmptyAccumulator,
  SizeLimit,
  CycleLimit,
  IoError,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// Library-wide exception. `kind()` is stable and machine readable; `what()`
/// carries a human readable detail message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_kind_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace poslp
