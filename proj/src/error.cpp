#include "satmp/error.hpp"

namespace satmp {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingHeader: return "MissingHeader";
    case ErrorCode::ClauseCountMismatch: return "ClauseCountMismatch";
    case ErrorCode::VariableOutOfRange: return "VariableOutOfRange";
    case ErrorCode::UnterminatedClause: return "UnterminatedClause";
    case ErrorCode::NonIntegerToken: return "NonIntegerToken";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CorruptState: return "CorruptState";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace satmp
