//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/dataio/evaluate.h"

#include "ccpred/core/error.h"

namespace ccpred::data {

Evaluation evaluate_model(const model::QGeoGNN &model,
                          const std::vector<model::Example> &data) {
  if (data.empty())
    throw Error(ErrorCode::kEmptyDataset, "nothing to evaluate");
  std::vector<const graph::GeoGraphPair *> ptrs;
  ptrs.reserve(data.size());
  for (const model::Example &e: data)
    ptrs.push_back(&e.pair);
  Evaluation out;
  out.predictions = model.predict(ptrs);
  std::vector<double> p1, p2, t1, t2, lo1, hi1, lo2, hi2;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const model::QuantilePrediction &q = out.predictions[i];
    p1.push_back(q.v1.q50);
    p2.push_back(q.v2.q50);
    t1.push_back(data[i].v1);
    t2.push_back(data[i].v2);
    lo1.push_back(q.v1.q10);
    hi1.push_back(q.v1.q90);
    lo2.push_back(q.v2.q10);
    hi2.push_back(q.v2.q90);
  }
  out.metrics = compute_metrics(p1, t1, p2, t2);
  out.coverage = { interval_coverage(lo1, hi1, t1),
                   interval_coverage(lo2, hi2, t2) };
  return out;
}

}  // namespace ccpred::data
