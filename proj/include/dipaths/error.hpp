#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dipaths {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Loop,
  DuplicateEdge,
  VertexOutOfRange,
  NotAcyclic,
  NotPartial,
  NotIncident,
  NoSignChange,
  ChordViolation,
  ZeroInterior,
  GroupTooSmall,
  ZeroSignTouch,
  SameTouchVertex,
  MixedSigns,
  VertexCollision,
  ZeroExcessVertex,
  NotSparse,
  BudgetExceeded,
  OddProduct,
  RejectionBudget,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Loop: return "Loop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::NotAcyclic: return "NotAcyclic";
    case ErrorCode::NotPartial: return "NotPartial";
    case ErrorCode::NotIncident: return "NotIncident";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::ChordViolation: return "ChordViolation";
    case ErrorCode::ZeroInterior: return "ZeroInterior";
    case ErrorCode::GroupTooSmall: return "GroupTooSmall";
    case ErrorCode::ZeroSignTouch: return "ZeroSignTouch";
    case ErrorCode::SameTouchVertex: return "SameTouchVertex";
    case ErrorCode::MixedSigns: return "MixedSigns";
    case ErrorCode::VertexCollision: return "VertexCollision";
    case ErrorCode::ZeroExcessVertex: return "ZeroExcessVertex";
    case ErrorCode::NotSparse: return "NotSparse";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OddProduct: return "OddProduct";
    case ErrorCode::RejectionBudget: return "RejectionBudget";
  }
  return "Unknown";
}

/// Every recoverable precondition violation in the library is reported as an
/// Error carrying a machine-readable code. Parse errors also carry the 1-based
/// input line (0 when not line-specific).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace dipaths
