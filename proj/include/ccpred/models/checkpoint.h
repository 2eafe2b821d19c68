//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_MODELS_CHECKPOINT_H_
#define CCPRED_MODELS_CHECKPOINT_H_

#include <iosfwd>
#include <string>

#include "ccpred/models/baseline.h"
#include "ccpred/models/qgeognn.h"

namespace ccpred::model {

// Container layout, all integers little-endian:
//   8 bytes   magic "CCPREDCK"
//   4 bytes   header length H
//   H bytes   JSON header: format_version, kind, codebook_version, config,
//             metadata, tensors [{name, rows, cols}] in payload order
//   8 * N     float64 payload, row-major, tensors back to back
//   8 bytes   FNV-1a 64 of every preceding byte
// Normalization statistics travel as "norm/..." tensors so they round-trip
// bit-exactly.
constexpr int kCheckpointFormatVersion = 1;

// Throws kIoError.
void save_checkpoint(const std::string &path, const QGeoGNN &model);
void write_checkpoint(std::ostream &os, const QGeoGNN &model);

// Throws kCorruptFile (magic, truncation, checksum, malformed header,
// missing or misshapen tensor), kVersionMismatch (format or codebook
// version), kIoError.
QGeoGNN load_checkpoint(const std::string &path);
QGeoGNN read_checkpoint(std::istream &is);

void save_baseline(const std::string &path, const BaselineMLP &model);
BaselineMLP load_baseline(const std::string &path);

// "qgeognn" or "baseline"; throws like load_checkpoint.
std::string checkpoint_kind(const std::string &path);

}  // namespace ccpred::model

#endif  // CCPRED_MODELS_CHECKPOINT_H_
