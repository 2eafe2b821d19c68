//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/chemfeat/overrides.h"

#include <fstream>
#include <vector>

#include "ccpred/core/error.h"
#include "ccpred/core/text.h"

namespace ccpred::chem {

OverrideTable read_overrides(std::istream &in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> columns;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      for (const std::string &c: split(line, ','))
        columns.emplace_back(trim(c));
      break;
    }
  }
  if (columns.empty() || columns[0] != "smiles")
    throw Error(ErrorCode::kParseError,
                "override file must start with a 'smiles' column");
  for (std::size_t c = 1; c < columns.size(); ++c) {
    if (columns[c] != "fingerprint" && descriptor_index(columns[c]) < 0)
      throw Error(ErrorCode::kUnknownOverrideKey,
                  "unknown override column '" + columns[c] + "'");
  }

  OverrideTable table;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty())
      continue;
    std::vector<std::string> cells = split(line, ',');
    if (cells.size() != columns.size())
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected "
                    + std::to_string(columns.size()) + " cells");
    FeatureOverride &entry = table[std::string(trim(cells[0]))];
    for (std::size_t c = 1; c < cells.size(); ++c) {
      std::string_view cell = trim(cells[c]);
      if (cell.empty())
        continue;
      if (columns[c] == "fingerprint") {
        entry.fingerprint = Fingerprint::from_bitstring(cell);
        continue;
      }
      std::optional<double> v = parse_double(cell);
      if (!v)
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_no) + ": bad number '"
                      + std::string(cell) + "' in column " + columns[c]);
      entry.descriptors[columns[c]] = *v;
    }
  }
  return table;
}

OverrideTable load_overrides(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return read_overrides(in);
}

}  // namespace ccpred::chem
