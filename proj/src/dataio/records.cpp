//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/dataio/records.h"

#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "ccpred/core/text.h"

namespace ccpred::data {

namespace {

constexpr std::array<std::string_view, 12> kColumns = {
  "smiles", "cas", "column_spec", "flow_rate", "pe_ea_ratio", "purity",
  "density", "sample_mass", "loading_solvent", "loading_volume", "t1", "t2"
};

}  // namespace

plan::ElutionVolumes ExperimentRecord::volumes() const {
  return plan::volumes_from_times(flow_rate, t1, t2);
}

graph::ExperimentalFeatures ExperimentRecord::features() const {
  return graph::make_experimental_features(column, ratio, sample_mass,
                                           loading_solvent, loading_volume);
}

LoadResult read_records(std::istream &is) {
  LoadResult out;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (trim(line).empty())
      continue;
    std::vector<std::string> cells = split(line, ',');
    if (!have_header) {
      if (line != kRecordHeader)
        throw Error(ErrorCode::kSchemaError,
                    "line " + std::to_string(lineno) + ": expected header '"
                      + kRecordHeader + "'");
      have_header = true;
      continue;
    }
    if (cells.size() != kColumns.size())
      throw Error(ErrorCode::kSchemaError,
                  "line " + std::to_string(lineno) + ": "
                    + std::to_string(cells.size()) + " columns, expected "
                    + std::to_string(kColumns.size()));
    auto bad = [&](std::size_t col, const std::string &why) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(lineno) + ", column "
                    + std::string(kColumns[col]) + ": " + why);
    };
    auto number = [&](std::size_t col) {
      auto v = parse_double(cells[col]);
      if (!v)
        bad(col, "not a number: '" + cells[col] + "'");
      return *v;
    };
    ExperimentRecord r;
    r.smiles = std::string(trim(cells[0]));
    if (r.smiles.empty())
      bad(0, "empty");
    r.cas = std::string(trim(cells[1]));
    try {
      r.column = graph::parse_column_spec(cells[2]);
    } catch (const Error &e) {
      bad(2, e.what());
    }
    r.flow_rate = number(3);
    try {
      r.ratio = graph::EluentRatio::parse(cells[4]);
    } catch (const Error &e) {
      bad(4, e.what());
    }
    r.purity = number(5);
    if (!trim(cells[6]).empty())
      r.density = number(6);
    r.sample_mass = number(7);
    try {
      r.loading_solvent = graph::parse_loading_solvent(cells[8]);
    } catch (const Error &e) {
      bad(8, e.what());
    }
    r.loading_volume = number(9);
    r.t1 = number(10);
    r.t2 = number(11);
    if (!r.valid()) {
      ++out.invalid;
      continue;
    }
    try {
      (void)r.volumes();
      (void)r.features();
    } catch (const Error &e) {
      out.rejected.push_back({ lineno, e.code(), e.what() });
      continue;
    }
    out.records.push_back(std::move(r));
  }
  if (!have_header)
    throw Error(ErrorCode::kSchemaError, "missing header");
  return out;
}

LoadResult load_records(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  return read_records(in);
}

void write_records(std::ostream &os,
                   const std::vector<ExperimentRecord> &records) {
  os << kRecordHeader << '\n';
  for (const ExperimentRecord &r: records) {
    os << r.smiles << ',' << r.cas << ',' << graph::to_string(r.column) << ','
       << format_double(r.flow_rate) << ',' << r.ratio.to_string() << ','
       << format_double(r.purity) << ','
       << (r.density ? format_double(*r.density) : std::string()) << ','
       << format_double(r.sample_mass) << ','
       << static_cast<int>(r.loading_solvent) << ','
       << format_double(r.loading_volume) << ',' << format_double(r.t1) << ','
       << format_double(r.t2) << '\n';
  }
}

void save_records(const std::string &path,
                  const std::vector<ExperimentRecord> &records) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  write_records(out, records);
  if (!out)
    throw Error(ErrorCode::kIoError, "write to '" + path + "' failed");
}

}  // namespace ccpred::data
