//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_DATAIO_SWEEP_H_
#define CCPRED_DATAIO_SWEEP_H_

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "ccpred/dataio/evaluate.h"
#include "ccpred/models/training.h"

namespace ccpred::data {

enum class SweepKind { kTrainProportion, kNoiseRatio };
std::string_view to_string(SweepKind kind);

inline const std::vector<double> kProportionGrid = {
  0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7
};
inline const std::vector<double> kNoiseGrid = {
  0.0, 0.1, 0.2, 0.3, 0.4, 0.5
};

struct SweepOptions {
  model::QGeoGNNConfig config;
  // train pool / validation / test; the test split is shared by every point.
  std::array<double, 3> split { 0.7, 0.1, 0.2 };
  std::uint64_t split_seed = 0;
  std::uint64_t noise_seed = 0;
  // Runs per grid point; replicate r adds r to the model and noise seeds.
  // Reported metrics are replicate means.
  int replicates = 1;
};

struct SweepPoint {
  double value = 0.0;
  std::size_t train_size = 0;
  Metrics metrics;
  std::array<double, 2> coverage {};
};

struct SweepResult {
  SweepKind kind = SweepKind::kTrainProportion;
  std::vector<SweepPoint> points;  // grid order
};

using SweepCallback = std::function<void(const SweepPoint &)>;

// Each grid value is the share of the whole dataset used for training, taken
// as a prefix of the shuffled train pool. Throws kInvalidArgument for values
// outside (0, split[0]] and kInvalidArgument for replicates < 1.
SweepResult sweep_train_proportion(const std::vector<model::Example> &data,
                                   const std::vector<double> &grid,
                                   const SweepOptions &options,
                                   const SweepCallback &on_point = {});

// Each grid value is a noise ratio applied to the training targets of the
// full train pool; validation and test targets stay clean. Within a
// replicate every ratio scales the same noise draw.
SweepResult sweep_noise(const std::vector<model::Example> &data,
                        const std::vector<double> &grid,
                        const SweepOptions &options,
                        const SweepCallback &on_point = {});

// Comma-separated: sweep,value,train_size,r2_v1,r2_v2,mae_v1,mae_v2,
// coverage_v1,coverage_v2.
void write_sweep_table(std::ostream &os, const SweepResult &result);

// Adjacent pairs where r2 (mean of V1 and V2) drops as the curve should rise.
// The proportion curve should rise with the value, the noise curve fall.
int count_inversions(const SweepResult &result);

}  // namespace ccpred::data

#endif  // CCPRED_DATAIO_SWEEP_H_
