//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_DATAIO_RECORDS_H_
#define CCPRED_DATAIO_RECORDS_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ccpred/core/error.h"
#include "ccpred/graphrep/conditions.h"
#include "ccpred/planner/elution.h"

namespace ccpred::data {

struct ExperimentRecord {
  std::string smiles;
  std::string cas;  // may be empty
  graph::ColumnSpec column = graph::ColumnSpec::k4g;
  double flow_rate = 10.0;  // mL/min
  graph::EluentRatio ratio;
  double purity = 1.0;
  std::optional<double> density;  // g/mL
  double sample_mass = 0.0;       // mg
  graph::LoadingSolvent loading_solvent = graph::LoadingSolvent::kNone;
  double loading_volume = 0.0;  // mL
  double t1 = 0.0;              // min
  double t2 = 0.0;              // min

  // False for the t1 = t2 = -1 sentinel.
  bool valid() const {
    return !(t1 == plan::kInvalidTime && t2 == plan::kInvalidTime);
  }
  plan::ElutionVolumes volumes() const;
  graph::ExperimentalFeatures features() const;

  bool operator==(const ExperimentRecord &) const = default;
};

inline constexpr const char *kRecordHeader =
  "smiles,cas,column_spec,flow_rate,pe_ea_ratio,purity,density,sample_mass,"
  "loading_solvent,loading_volume,t1,t2";

struct Rejection {
  std::size_t line = 0;
  ErrorCode code = ErrorCode::kOrderError;
  std::string reason;
};

struct LoadResult {
  std::vector<ExperimentRecord> records;  // valid rows only
  std::size_t invalid = 0;                // sentinel rows, excluded
  std::vector<Rejection> rejected;        // rows breaking a record invariant
};

// Cells that do not parse throw; rows that parse but break an invariant
// (t2 <= t1, negative times, flow <= 0) are rejected and reported.
//
// Throws kSchemaError (header or column count), kParseError (with line and
// column name).
LoadResult read_records(std::istream &is);
LoadResult load_records(const std::string &path);

void write_records(std::ostream &os,
                   const std::vector<ExperimentRecord> &records);
void save_records(const std::string &path,
                  const std::vector<ExperimentRecord> &records);

}  // namespace ccpred::data

#endif  // CCPRED_DATAIO_RECORDS_H_
