#include "poslp/error.hpp"

namespace poslp {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroColumn: return "ZeroColumn";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::ExplicitZero: return "ExplicitZero";
    case ErrorKind::DuplicateEntry: return "DuplicateEntry";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorKind::NumericalOverflow: return "NumericalOverflow";
    case ErrorKind::GradientBelowMinusOne: return "GradientBelowMinusOne";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorKind::EmptyAccumulator: return "EmptyAccumulator";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::CycleLimit: return "CycleLimit";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace poslp
