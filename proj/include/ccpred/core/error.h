//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_CORE_ERROR_H_
#define CCPRED_CORE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ccpred {

// Machine-readable reason codes. Every failure raised by the library carries
// exactly one of these; the CLI prints the name and maps it to an exit code.
enum class ErrorCode {
  kSyntaxError,
  kUnsupportedFeature,
  kUnknownOverrideKey,
  kSchemeMismatch,
  kSingleAtomMolecule,
  kFractionSumError,
  kShapeMismatch,
  kTauOutOfRange,
  kGraphCycle,
  kNonFinite,
  kEmptyDataset,
  kDivergenceDetected,
  kCodebookMismatch,
  kWidthMismatch,
  kVersionMismatch,
  kCorruptFile,
  kOrderError,
  kSentinelInput,
  kDegenerateTotal,
  kTooShortTrace,
  kSchemaError,
  kParseError,
  kBadProportions,
  kKTooLarge,
  kRatioOutOfRange,
  kLengthMismatch,
  kInvalidArgument,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

// Validation errors are caused by user input; everything else is internal.
bool is_validation_error(ErrorCode code);

class Error: public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message);

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const { return error_code_name(code_); }

private:
  ErrorCode code_;
};

// SMILES failures additionally carry the 0-based character offset.
class SmilesError: public Error {
public:
  SmilesError(ErrorCode code, std::size_t position, const std::string &reason);

  std::size_t position() const noexcept { return position_; }
  const std::string &reason() const noexcept { return reason_; }

private:
  std::size_t position_;
  std::string reason_;
};

}  // namespace ccpred

#endif  // CCPRED_CORE_ERROR_H_
