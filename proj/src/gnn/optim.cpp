//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/gnn/optim.h"

#include <algorithm>
#include <cmath>

#include "ccpred/core/error.h"

namespace ccpred::nn {

void adam_step(ParameterSet &params, AdamState &s) {
  if (s.m.size() != params.size()) {
    s.m.clear();
    s.v.clear();
    for (const Parameter &p: params) {
      s.m.emplace_back(p.value.rows(), p.value.cols());
      s.v.emplace_back(p.value.rows(), p.value.cols());
    }
  }
  ++s.step;
  const double c1 = 1.0 - std::pow(s.beta1, static_cast<double>(s.step));
  const double c2 = 1.0 - std::pow(s.beta2, static_cast<double>(s.step));
  for (std::size_t k = 0; k < params.size(); ++k) {
    Parameter &p = params[k];
    Tensor &m = s.m[k], &v = s.v[k];
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      double g = p.grad[i];
      m[i] = s.beta1 * m[i] + (1.0 - s.beta1) * g;
      v[i] = s.beta2 * v[i] + (1.0 - s.beta2) * g * g;
      double mhat = m[i] / c1;
      double vhat = v[i] / c2;
      p.value[i] -= s.lr * mhat / (std::sqrt(vhat) + s.eps);
    }
  }
}

double StepLR::lr(int epoch) const {
  if (step_size < 1 || !(gamma > 0.0 && gamma <= 1.0) || final_lr > lr0)
    throw Error(ErrorCode::kInvalidArgument,
                "StepLR needs step_size >= 1, 0 < gamma <= 1, final_lr <= lr0");
  int k = std::max(epoch, 0) / step_size;
  return std::max(final_lr, lr0 * std::pow(gamma, k));
}

}  // namespace ccpred::nn
