//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_MODELS_BASELINE_H_
#define CCPRED_MODELS_BASELINE_H_

#include <array>
#include <cstdint>
#include <vector>

#include "ccpred/gnn/params.h"
#include "ccpred/models/featurizer.h"
#include "ccpred/models/normalization.h"

namespace ccpred::model {

struct BaselineMLPConfig {
  int hidden_layers = 3;
  int hidden_units = 50;
  double leaky_slope = 0.01;
  double lr = 1e-3;
  int max_epochs = 10000;
  int early_stop_patience = 50;
  int batch_size = 256;  // effective batch is min(batch_size, train size)
  std::uint64_t seed = 0;

  void validate() const;
};

using BaselineRow = std::vector<double>;           // kBaselineWidth values
using BaselineTarget = std::array<double, 2>;      // V1, V2 in mL

class BaselineMLP {
public:
  BaselineMLP(const BaselineMLPConfig &config, Standardizer inputs,
              Standardizer targets);

  const BaselineMLPConfig &config() const { return config_; }
  nn::ParameterSet &params() { return params_; }
  const Standardizer &input_norm() const { return inputs_; }
  const Standardizer &target_norm() const { return targets_; }

  // Throws kWidthMismatch.
  std::vector<BaselineTarget> predict(const std::vector<BaselineRow> &rows)
    const;

private:
  friend BaselineMLP baseline_train(const std::vector<BaselineRow> &,
                                    const std::vector<BaselineTarget> &,
                                    const std::vector<BaselineRow> &,
                                    const std::vector<BaselineTarget> &,
                                    const BaselineMLPConfig &);

  BaselineMLPConfig config_;
  Standardizer inputs_;
  Standardizer targets_;
  nn::ParameterSet params_;
};

// Mean squared error on standardized targets with early stopping on the
// validation rows (training rows when there are none).
//
// Throws kWidthMismatch, kEmptyDataset, kLengthMismatch,
// kDivergenceDetected.
BaselineMLP baseline_train(const std::vector<BaselineRow> &train_rows,
                           const std::vector<BaselineTarget> &train_targets,
                           const std::vector<BaselineRow> &val_rows,
                           const std::vector<BaselineTarget> &val_targets,
                           const BaselineMLPConfig &config);

}  // namespace ccpred::model

#endif  // CCPRED_MODELS_BASELINE_H_
