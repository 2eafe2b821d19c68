//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_GNN_OPTIM_H_
#define CCPRED_GNN_OPTIM_H_

#include <vector>

#include "ccpred/gnn/params.h"

namespace ccpred::nn {

struct AdamState {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long step = 0;
  std::vector<Tensor> m;  // lazily shaped like the parameters
  std::vector<Tensor> v;
};

// One bias-corrected Adam update from the gradients held in params.
void adam_step(ParameterSet &params, AdamState &state);

struct StepLR {
  double lr0 = 1e-3;
  double gamma = 0.5;
  int step_size = 100;
  double final_lr = 1e-4;

  // lr0 * gamma^floor(epoch / step_size), never below final_lr.
  // Throws kInvalidArgument for step_size < 1, gamma outside (0, 1] or
  // final_lr > lr0.
  double lr(int epoch) const;
};

}  // namespace ccpred::nn

#endif  // CCPRED_GNN_OPTIM_H_
