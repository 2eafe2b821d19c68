//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/dataio/metrics.h"

#include <cmath>
#include <limits>
#include <string>

#include "ccpred/core/error.h"

namespace ccpred::data {

namespace {

void check(std::size_t a, std::size_t b) {
  if (a != b)
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(a) + " predictions for " + std::to_string(b)
                  + " targets");
  if (a == 0)
    throw Error(ErrorCode::kEmptyDataset, "metric of zero records");
}

}  // namespace

double r_squared(const std::vector<double> &pred,
                 const std::vector<double> &truth) {
  check(pred.size(), truth.size());
  double mean = 0.0;
  for (double t: truth)
    mean += t;
  mean /= static_cast<double>(truth.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ss_res += (truth[i] - pred[i]) * (truth[i] - pred[i]);
    ss_tot += (truth[i] - mean) * (truth[i] - mean);
  }
  if (ss_tot == 0.0)
    return std::numeric_limits<double>::quiet_NaN();
  return 1.0 - ss_res / ss_tot;
}

double mae(const std::vector<double> &pred, const std::vector<double> &truth) {
  check(pred.size(), truth.size());
  double s = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    s += std::abs(pred[i] - truth[i]);
  return s / static_cast<double>(truth.size());
}

bool Metrics::r2_defined(std::size_t target) const {
  return !std::isnan(r2[target]);
}

Metrics compute_metrics(const std::vector<double> &pred_v1,
                        const std::vector<double> &true_v1,
                        const std::vector<double> &pred_v2,
                        const std::vector<double> &true_v2) {
  Metrics m;
  m.r2 = { r_squared(pred_v1, true_v1), r_squared(pred_v2, true_v2) };
  m.mae = { mae(pred_v1, true_v1), mae(pred_v2, true_v2) };
  m.n = true_v1.size();
  return m;
}

double interval_coverage(const std::vector<double> &lo,
                         const std::vector<double> &hi,
                         const std::vector<double> &truth) {
  check(lo.size(), truth.size());
  check(hi.size(), truth.size());
  std::size_t inside = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    inside += lo[i] <= truth[i] && truth[i] <= hi[i];
  return static_cast<double>(inside) / static_cast<double>(truth.size());
}

}  // namespace ccpred::data
