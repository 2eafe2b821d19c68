//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/core/error.h"

namespace ccpred {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::kSyntaxError:
    return "SyntaxError";
  case ErrorCode::kUnsupportedFeature:
    return "UnsupportedFeature";
  case ErrorCode::kUnknownOverrideKey:
    return "UnknownOverrideKey";
  case ErrorCode::kSchemeMismatch:
    return "SchemeMismatch";
  case ErrorCode::kSingleAtomMolecule:
    return "SingleAtomMolecule";
  case ErrorCode::kFractionSumError:
    return "FractionSumError";
  case ErrorCode::kShapeMismatch:
    return "ShapeMismatch";
  case ErrorCode::kTauOutOfRange:
    return "TauOutOfRange";
  case ErrorCode::kGraphCycle:
    return "GraphCycle";
  case ErrorCode::kNonFinite:
    return "NonFinite";
  case ErrorCode::kEmptyDataset:
    return "EmptyDataset";
  case ErrorCode::kDivergenceDetected:
    return "DivergenceDetected";
  case ErrorCode::kCodebookMismatch:
    return "CodebookMismatch";
  case ErrorCode::kWidthMismatch:
    return "WidthMismatch";
  case ErrorCode::kVersionMismatch:
    return "VersionMismatch";
  case ErrorCode::kCorruptFile:
    return "CorruptFile";
  case ErrorCode::kOrderError:
    return "OrderError";
  case ErrorCode::kSentinelInput:
    return "SentinelInput";
  case ErrorCode::kDegenerateTotal:
    return "DegenerateTotal";
  case ErrorCode::kTooShortTrace:
    return "TooShortTrace";
  case ErrorCode::kSchemaError:
    return "SchemaError";
  case ErrorCode::kParseError:
    return "ParseError";
  case ErrorCode::kBadProportions:
    return "BadProportions";
  case ErrorCode::kKTooLarge:
    return "KTooLarge";
  case ErrorCode::kRatioOutOfRange:
    return "RatioOutOfRange";
  case ErrorCode::kLengthMismatch:
    return "LengthMismatch";
  case ErrorCode::kInvalidArgument:
    return "InvalidArgument";
  case ErrorCode::kIoError:
    return "IoError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
  case ErrorCode::kGraphCycle:
  case ErrorCode::kNonFinite:
  case ErrorCode::kDivergenceDetected:
  case ErrorCode::kIoError:
    return false;
  default:
    return true;
  }
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) { }

SmilesError::SmilesError(ErrorCode code, std::size_t position,
                         const std::string &reason)
    : Error(code, "at position " + std::to_string(position) + ": " + reason),
      position_(position), reason_(reason) { }

}  // namespace ccpred
