//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_GRAPHREP_CONDITIONS_H_
#define CCPRED_GRAPHREP_CONDITIONS_H_

#include <array>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

namespace ccpred::graph {

constexpr std::size_t kSolventFields = 6;
constexpr std::size_t kColumnFields = 3;
// solvent (6) + column (3) + sample mass + loading solvent code + loading
// volume.
constexpr std::size_t kConditionWidth = 12;
// The solvent and column blocks only; used by the baseline network.
constexpr std::size_t kCoreConditionWidth = kSolventFields + kColumnFields;

using SolventRow = std::array<double, kSolventFields>;
using ColumnRow = std::array<double, kColumnFields>;

enum class Solvent { kPetroleumEther, kEthylAcetate };

// polarity index, dielectric constant, dipole moment (D), molar mass (g/mol),
// boiling point (C), viscosity (cP).
const std::array<std::string_view, kSolventFields> &solvent_field_names();
const SolventRow &solvent_row(Solvent solvent);
std::string_view to_string(Solvent solvent);

// Fractions must be >= 0 and sum to 1 within 1e-9; throws kFractionSumError.
SolventRow solvent_weighting(double pe_fraction, double ea_fraction);

// "a/b" parts of PE and EA, e.g. "20/1".
class EluentRatio {
public:
  EluentRatio() = default;
  EluentRatio(double pe_parts, double ea_parts);

  // Throws kParseError.
  static EluentRatio parse(std::string_view text);

  double pe_parts() const { return pe_; }
  double ea_parts() const { return ea_; }
  double pe_fraction() const { return pe_ / (pe_ + ea_); }
  double ea_fraction() const { return ea_ / (pe_ + ea_); }
  std::string to_string() const;

  bool operator==(const EluentRatio &) const = default;

private:
  double pe_ = 1.0;
  double ea_ = 0.0;
};

enum class ColumnSpec { k4g, k8g, k25g, k40g };
constexpr std::array<ColumnSpec, 4> kAllColumns = {
  ColumnSpec::k4g, ColumnSpec::k8g, ColumnSpec::k25g, ColumnSpec::k40g
};

std::string_view to_string(ColumnSpec spec);
// Throws kParseError.
ColumnSpec parse_column_spec(std::string_view text);
// packing mass (g), length (mm), inner diameter (mm).
const ColumnRow &column_info(ColumnSpec spec);
const std::array<std::string_view, kColumnFields> &column_field_names();
// mL/min.
double recommended_flow_rate(ColumnSpec spec);

enum class LoadingSolvent { kNone = 0, kDichloromethane = 1, kEthylAcetate = 2,
                            kPetroleumEther = 3 };
std::string_view to_string(LoadingSolvent solvent);
// Accepts the integer code or the short name (none, DCM, EA, PE).
LoadingSolvent parse_loading_solvent(std::string_view text);

struct ExperimentalFeatures {
  SolventRow solvent_weighted {};
  ColumnRow column_info {};
  double sample_mass = 0.0;       // mg
  int loading_solvent_code = 0;
  double loading_volume = 0.0;    // mL

  std::array<double, kConditionWidth> flatten() const;
  std::array<double, kCoreConditionWidth> core() const;

  bool operator==(const ExperimentalFeatures &) const = default;
};

// Throws kInvalidArgument for negative mass or volume.
ExperimentalFeatures make_experimental_features(ColumnSpec column,
                                                const EluentRatio &ratio,
                                                double sample_mass,
                                                LoadingSolvent loading,
                                                double loading_volume);

// Same text as data/solvents.csv and data/columns.csv.
void write_solvent_table(std::ostream &os);
void write_column_table(std::ostream &os);

}  // namespace ccpred::graph

#endif  // CCPRED_GRAPHREP_CONDITIONS_H_
