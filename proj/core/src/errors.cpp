#include "e2vem/errors.hpp"

namespace e2vem {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::NotStarShaped: return "NotStarShaped";
    case ErrorCode::ClockwiseOrientation: return "ClockwiseOrientation";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::StructuralDefect: return "StructuralDefect";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::AdmissibilityNotReached: return "AdmissibilityNotReached";
    case ErrorCode::InadmissibleDegrees: return "InadmissibleDegrees";
    case ErrorCode::NotSPD: return "NotSPD";
    case ErrorCode::MissingExactSolution: return "MissingExactSolution";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InsufficientLevels: return "InsufficientLevels";
  }
  return "Unknown";
}

namespace {
std::string decorate(ErrorCode code, const std::string& what,
                     std::optional<std::size_t> cell) {
  std::string msg(to_string(code));
  if (cell) msg += " (cell " + std::to_string(*cell) + ")";
  msg += ": ";
  msg += what;
  return msg;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& what, std::optional<std::size_t> cell)
    : std::runtime_error(decorate(code, what, cell)), code_(code), cell_(cell), detail_(what) {}

}  // namespace e2vem
