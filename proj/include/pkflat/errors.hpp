#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pkflat {

enum class ErrorKind {
  DivisionByZero,
  MixedFields,
  ParseError,
  FieldError,
  InvalidRectangle,
  UnknownRectangle,
  InvalidSegment,
  LengthMismatch,
  Overlap,
  Gap,
  Disconnected,
  BadOrientation,
  InternalInconsistency,
  PointOutsideRectangle,
  InvalidTransversal,
  NoReturn,
  NonPrimitiveDirection,
  InvalidOrder,
  UnsupportedTorus,
  DegenerateLattice,
  TripleIntersection,
  ParallelCoincident,
  UsageError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. Mathematical negatives (an
/// irrational ratio, a surface that does not cover a torus, a trajectory
/// that meets a cone point) are ordinary return values, not errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  Error(ErrorKind kind, const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(std::string(to_string(kind)) + " at line " + std::to_string(line) +
                           ", column " + std::to_string(column) + ": " + message),
        kind_(kind),
        line_(line),
        column_(column) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  ErrorKind kind_;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

}  // namespace pkflat
