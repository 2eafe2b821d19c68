//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/graphrep/conditions.h"

#include <cmath>

#include "ccpred/core/error.h"
#include "ccpred/core/text.h"

namespace ccpred::graph {
namespace {

// Petroleum ether is modeled by n-hexane constants.
constexpr SolventRow kPetroleumEther = { 0.1, 1.89, 0.0, 86.18, 68.7, 0.30 };
constexpr SolventRow kEthylAcetate = { 4.4, 6.02, 1.78, 88.11, 77.1, 0.45 };

// 8g is two 4g cartridges in series.
constexpr std::array<ColumnRow, 4> kColumns = { {
  { 4.0, 63.0, 13.0 },
  { 8.0, 126.0, 13.0 },
  { 25.0, 120.0, 24.0 },
  { 40.0, 150.0, 28.0 },
} };

constexpr std::array<double, 4> kFlowRates = { 10.0, 10.0, 15.0, 30.0 };

}  // namespace

const std::array<std::string_view, kSolventFields> &solvent_field_names() {
  static const std::array<std::string_view, kSolventFields> kNames = {
    "polarity_index", "dielectric", "dipole_moment",
    "molar_mass",     "boiling_point", "viscosity",
  };
  return kNames;
}

const SolventRow &solvent_row(Solvent solvent) {
  return solvent == Solvent::kPetroleumEther ? kPetroleumEther : kEthylAcetate;
}

std::string_view to_string(Solvent solvent) {
  return solvent == Solvent::kPetroleumEther ? "PE" : "EA";
}

SolventRow solvent_weighting(double pe_fraction, double ea_fraction) {
  if (!(pe_fraction >= 0.0) || !(ea_fraction >= 0.0)
      || std::abs(pe_fraction + ea_fraction - 1.0) > 1e-9)
    throw Error(ErrorCode::kFractionSumError,
                "eluent fractions must be >= 0 and sum to 1, got "
                  + format_double(pe_fraction) + " and "
                  + format_double(ea_fraction));
  SolventRow out;
  for (std::size_t i = 0; i < kSolventFields; ++i)
    out[i] = pe_fraction * kPetroleumEther[i] + ea_fraction * kEthylAcetate[i];
  return out;
}

EluentRatio::EluentRatio(double pe_parts, double ea_parts)
  : pe_(pe_parts), ea_(ea_parts) {
  if (!(pe_parts >= 0.0) || !(ea_parts >= 0.0) || pe_parts + ea_parts <= 0.0
      || !std::isfinite(pe_parts + ea_parts))
    throw Error(ErrorCode::kFractionSumError,
                "eluent parts must be >= 0 with a positive sum");
}

EluentRatio EluentRatio::parse(std::string_view text) {
  std::string_view t = trim(text);
  std::size_t slash = t.find('/');
  if (slash == std::string_view::npos)
    throw Error(ErrorCode::kParseError,
                "eluent ratio must look like 'a/b', got '" + std::string(t)
                  + "'");
  std::optional<double> a = parse_double(trim(t.substr(0, slash)));
  std::optional<double> b = parse_double(trim(t.substr(slash + 1)));
  if (!a || !b || *a < 0.0 || *b < 0.0 || *a + *b <= 0.0)
    throw Error(ErrorCode::kParseError,
                "bad eluent ratio '" + std::string(t) + "'");
  return EluentRatio(*a, *b);
}

std::string EluentRatio::to_string() const {
  return format_double(pe_) + "/" + format_double(ea_);
}

std::string_view to_string(ColumnSpec spec) {
  switch (spec) {
  case ColumnSpec::k4g:
    return "4g";
  case ColumnSpec::k8g:
    return "8g";
  case ColumnSpec::k25g:
    return "25g";
  case ColumnSpec::k40g:
    return "40g";
  }
  return "?";
}

ColumnSpec parse_column_spec(std::string_view text) {
  std::string_view t = trim(text);
  for (ColumnSpec c: kAllColumns) {
    if (t == to_string(c))
      return c;
  }
  throw Error(ErrorCode::kParseError,
              "unknown column spec '" + std::string(t)
                + "' (expected 4g, 8g, 25g or 40g)");
}

const ColumnRow &column_info(ColumnSpec spec) {
  return kColumns[static_cast<std::size_t>(spec)];
}

const std::array<std::string_view, kColumnFields> &column_field_names() {
  static const std::array<std::string_view, kColumnFields> kNames = {
    "packing_mass_g", "length_mm", "diameter_mm"
  };
  return kNames;
}

double recommended_flow_rate(ColumnSpec spec) {
  return kFlowRates[static_cast<std::size_t>(spec)];
}

std::string_view to_string(LoadingSolvent solvent) {
  switch (solvent) {
  case LoadingSolvent::kNone:
    return "none";
  case LoadingSolvent::kDichloromethane:
    return "DCM";
  case LoadingSolvent::kEthylAcetate:
    return "EA";
  case LoadingSolvent::kPetroleumEther:
    return "PE";
  }
  return "?";
}

LoadingSolvent parse_loading_solvent(std::string_view text) {
  std::string_view t = trim(text);
  for (int code = 0; code <= 3; ++code) {
    auto s = static_cast<LoadingSolvent>(code);
    if (t == to_string(s) || t == std::to_string(code))
      return s;
  }
  throw Error(ErrorCode::kParseError,
              "unknown loading solvent '" + std::string(t) + "'");
}

std::array<double, kConditionWidth> ExperimentalFeatures::flatten() const {
  std::array<double, kConditionWidth> out;
  std::size_t k = 0;
  for (double v: solvent_weighted)
    out[k++] = v;
  for (double v: column_info)
    out[k++] = v;
  out[k++] = sample_mass;
  out[k++] = loading_solvent_code;
  out[k++] = loading_volume;
  return out;
}

std::array<double, kCoreConditionWidth> ExperimentalFeatures::core() const {
  std::array<double, kCoreConditionWidth> out;
  std::size_t k = 0;
  for (double v: solvent_weighted)
    out[k++] = v;
  for (double v: column_info)
    out[k++] = v;
  return out;
}

ExperimentalFeatures make_experimental_features(ColumnSpec column,
                                                const EluentRatio &ratio,
                                                double sample_mass,
                                                LoadingSolvent loading,
                                                double loading_volume) {
  if (!(sample_mass >= 0.0) || !(loading_volume >= 0.0))
    throw Error(ErrorCode::kInvalidArgument,
                "sample mass and loading volume must be >= 0");
  ExperimentalFeatures f;
  f.solvent_weighted = solvent_weighting(ratio.pe_fraction(),
                                         ratio.ea_fraction());
  f.column_info = graph::column_info(column);
  f.sample_mass = sample_mass;
  f.loading_solvent_code = static_cast<int>(loading);
  f.loading_volume = loading_volume;
  return f;
}

void write_solvent_table(std::ostream &os) {
  os << "# petroleum ether modeled by n-hexane\n";
  os << "solvent";
  for (std::string_view n: solvent_field_names())
    os << ',' << n;
  os << '\n';
  for (Solvent s: { Solvent::kPetroleumEther, Solvent::kEthylAcetate }) {
    os << to_string(s);
    for (double v: solvent_row(s))
      os << ',' << format_double(v);
    os << '\n';
  }
}

void write_column_table(std::ostream &os) {
  os << "column";
  for (std::string_view n: column_field_names())
    os << ',' << n;
  os << ",flow_rate_ml_min\n";
  for (ColumnSpec c: kAllColumns) {
    os << to_string(c);
    for (double v: column_info(c))
      os << ',' << format_double(v);
    os << ',' << format_double(recommended_flow_rate(c)) << '\n';
  }
}

}  // namespace ccpred::graph
