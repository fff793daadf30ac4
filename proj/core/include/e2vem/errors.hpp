#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace e2vem {

enum class ErrorCode {
  InvalidArgument,
  NotSimple,
  NotStarShaped,
  ClockwiseOrientation,
  UnsupportedDegree,
  StructuralDefect,
  SingularSystem,
  AdmissibilityNotReached,
  InadmissibleDegrees,
  NotSPD,
  MissingExactSolution,
  DegenerateData,
  RejectionBudgetExceeded,
  ParseError,
  InsufficientLevels,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code drives CLI exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> cell = std::nullopt);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  /// Mesh cell the failure refers to, when there is one.
  [[nodiscard]] std::optional<std::size_t> cell() const noexcept { return cell_; }
  /// Message without the code and cell prefix.
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> cell_;
  std::string detail_;
};

}  // namespace e2vem
