#include "dpfx/error.hpp"

namespace dpfx {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSchemeTooShort: return "SchemeTooShort";
    case ErrorCode::kInvalidShape: return "InvalidShape";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kNoValidTree: return "NoValidTree";
    case ErrorCode::kWorkLimitExceeded: return "WorkLimitExceeded";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kCodeTooLong: return "CodeTooLong";
    case ErrorCode::kUnknownSymbol: return "UnknownSymbol";
    case ErrorCode::kCorruptContainer: return "CorruptContainer";
    case ErrorCode::kTableMismatch: return "TableMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kMalformedTable: return "MalformedTable";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace dpfx
