//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_DATAIO_SYNTH_H_
#define CCPRED_DATAIO_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ccpred/dataio/records.h"

namespace ccpred::data {

// 60 molecules from hydrocarbons to diacids; contains allyl phenyl ether and
// 2-allylphenol.
const std::vector<std::string> &synth_corpus();

// The PE/EA ratios the generator draws from.
const std::vector<graph::EluentRatio> &synth_ratios();

// V1 = V0 * (1 + exp(c0 + c1 * tpsa / 100 + c2 * hbd - c3 * ln(1 + 9 * ea)))
// V2 = V1 * (1 + w)
struct RetentionLaw {
  double c0 = 0.5;
  double c1 = 2.0;
  double c2 = 0.8;
  double c3 = 1.2;
  double w = 0.6;

  double v0(graph::ColumnSpec column) const;  // mL
  double v1(double tpsa, double hbd, double ea_fraction,
            graph::ColumnSpec column) const;
  double v2(double v1) const { return v1 * (1.0 + w); }
};

struct SynthOptions {
  std::size_t n = 2000;
  std::uint64_t seed = 0;
  std::vector<graph::ColumnSpec> columns { graph::ColumnSpec::k4g };
  // Observed V1 = V1 * exp(sigma z1); observed V2 = observed V1
  // + w * V1 * exp(sigma z2).
  double noise_sigma = 0.1;
  RetentionLaw law;
};

struct SynthDataset {
  std::vector<ExperimentRecord> records;
  // Noise-free law values, aligned with records.
  std::vector<double> truth_v1;
  std::vector<double> truth_v2;
};

// Throws kInvalidArgument for n = 0, an empty column list or negative sigma.
SynthDataset synth_dataset(const SynthOptions &options);

}  // namespace ccpred::data

#endif  // CCPRED_DATAIO_SYNTH_H_
