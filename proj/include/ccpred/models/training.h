//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_MODELS_TRAINING_H_
#define CCPRED_MODELS_TRAINING_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ccpred/graphrep/graph_pair.h"
#include "ccpred/models/qgeognn.h"

namespace ccpred::model {

// One record with its measured elution volumes in mL.
struct Example {
  graph::GeoGraphPair pair;
  double v1 = 0.0;
  double v2 = 0.0;
};

struct EpochLog {
  int epoch = 0;
  double lr = 0.0;
  double train_loss = 0.0;
  double val_loss = 0.0;
};

using EpochCallback = std::function<void(const EpochLog &)>;

// Throws kEmptyDataset.
Normalization fit_normalization(const std::vector<Example> &train);

// Early stopping watches val (train when val is empty); the returned model
// holds the parameters of the best epoch.
//
// Throws kEmptyDataset, kDivergenceDetected, kCodebookMismatch.
QGeoGNN train_qgeognn(const QGeoGNNConfig &config,
                      const std::vector<Example> &train,
                      const std::vector<Example> &val,
                      const EpochCallback &on_epoch = {});

enum class HeadInit {
  kRandom,        // Xavier draw from the transfer seed
  kLeastSquares,  // ridge fit of the median outputs on the base features
};

struct TransferConfig {
  double lr = 1e-4;
  int lr_step_size = 100;
  double lr_gamma = 1.0;
  double final_lr = 1e-4;
  int max_epochs = 1500;
  int batch_size = 2048;
  int early_stop_patience = 50;
  std::uint64_t seed = 0;
  std::string parent;  // recorded in the metadata
  HeadInit head_init = HeadInit::kLeastSquares;
  double ridge = 1e-3;  // per record, for kLeastSquares
};

// Copies base, reinitializes the output layer, refits target normalization
// and the column-info condition slots on train, then fine-tunes every
// parameter.
QGeoGNN transfer(const QGeoGNN &base, const TransferConfig &config,
                 const std::vector<Example> &train,
                 const std::vector<Example> &val,
                 const EpochCallback &on_epoch = {});

// Replaces the output layer: median columns by a ridge regression of the
// normalized targets on readout_features(), lower and upper columns by a
// constant spread from the residual scale. Other parameters are untouched.
//
// Throws kEmptyDataset.
void fit_head_least_squares(QGeoGNN &model, const std::vector<Example> &data,
                            double ridge);

// Mean pinball loss on the normalized scale, summed over quantiles and both
// targets.
double evaluate_loss(const QGeoGNN &model, const std::vector<Example> &data);

}  // namespace ccpred::model

#endif  // CCPRED_MODELS_TRAINING_H_
