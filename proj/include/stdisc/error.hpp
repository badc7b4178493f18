#pragma once

#include <stdexcept>
#include <string>

namespace stdisc {

enum class ErrorKind {
  InvalidArgument,
  DegenerateInput,
  EvaluationDomain,
  AnchorNotInterior,
  DegenerateLift,
  ChartPointAtInfinity,
  ParameterOutOfRange,
  DegenerateBump,
  GridTooCoarse,
  VanishingFactor,
  AttachmentFailure,
  IncidenceViolation,
  Parse,
  DivisionByZero,
  Overflow,
  Internal,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (and the CLI
/// exit-status logic) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace stdisc
