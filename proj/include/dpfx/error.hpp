#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dpfx {

enum class ErrorCode {
  kInvalidArgument,
  kSchemeTooShort,
  kInvalidShape,
  kInfeasible,
  kNoValidTree,
  kWorkLimitExceeded,
  kTooLarge,
  kCodeTooLong,
  kUnknownSymbol,
  kCorruptContainer,
  kTableMismatch,
  kEmptyInput,
  kMalformedTable,
  kParseError,
  kIo,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the text parsers; `position` is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorCode::kParseError,
              message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace dpfx
