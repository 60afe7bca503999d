#pragma once

#include <stdexcept>
#include <string>

namespace satmp {

enum class ErrorCode {
  MissingHeader = 1,
  ClauseCountMismatch,
  VariableOutOfRange,
  UnterminatedClause,
  NonIntegerToken,
  InvalidParams,
  TooLarge,
  IndexOutOfRange,
  CorruptState,
  DomainViolation,
  LengthMismatch,
  Io,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace satmp
