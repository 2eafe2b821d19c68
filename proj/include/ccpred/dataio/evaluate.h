//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_DATAIO_EVALUATE_H_
#define CCPRED_DATAIO_EVALUATE_H_

#include <array>
#include <vector>

#include "ccpred/dataio/metrics.h"
#include "ccpred/models/qgeognn.h"
#include "ccpred/models/training.h"

namespace ccpred::data {

struct Evaluation {
  Metrics metrics;                   // q50 against the observed targets
  std::array<double, 2> coverage {}; // share inside [q10, q90], V1 and V2
  std::vector<model::QuantilePrediction> predictions;
};

// Throws kEmptyDataset.
Evaluation evaluate_model(const model::QGeoGNN &model,
                          const std::vector<model::Example> &data);

}  // namespace ccpred::data

#endif  // CCPRED_DATAIO_EVALUATE_H_
