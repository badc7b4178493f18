#include "stdisc/error.hpp"

namespace stdisc {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::EvaluationDomain: return "evaluation-domain";
    case ErrorKind::AnchorNotInterior: return "anchor-not-interior";
    case ErrorKind::DegenerateLift: return "degenerate-lift";
    case ErrorKind::ChartPointAtInfinity: return "chart-point-at-infinity";
    case ErrorKind::ParameterOutOfRange: return "parameter-out-of-range";
    case ErrorKind::DegenerateBump: return "degenerate-bump";
    case ErrorKind::GridTooCoarse: return "grid-too-coarse";
    case ErrorKind::VanishingFactor: return "vanishing-factor";
    case ErrorKind::AttachmentFailure: return "attachment-failure";
    case ErrorKind::IncidenceViolation: return "incidence-violation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace stdisc
