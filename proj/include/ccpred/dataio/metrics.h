//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_DATAIO_METRICS_H_
#define CCPRED_DATAIO_METRICS_H_

#include <array>
#include <cstddef>
#include <vector>

namespace ccpred::data {

// NaN when truth has zero variance. Throws kLengthMismatch,
// kEmptyDataset.
double r_squared(const std::vector<double> &pred,
                 const std::vector<double> &truth);
double mae(const std::vector<double> &pred, const std::vector<double> &truth);

// Index 0 is V1, index 1 is V2.
struct Metrics {
  std::array<double, 2> r2 {};
  std::array<double, 2> mae {};
  std::size_t n = 0;

  bool r2_defined(std::size_t target) const;
};

Metrics compute_metrics(const std::vector<double> &pred_v1,
                        const std::vector<double> &true_v1,
                        const std::vector<double> &pred_v2,
                        const std::vector<double> &true_v2);

// Share of truth values inside [lo, hi]. Throws kLengthMismatch,
// kEmptyDataset.
double interval_coverage(const std::vector<double> &lo,
                         const std::vector<double> &hi,
                         const std::vector<double> &truth);

}  // namespace ccpred::data

#endif  // CCPRED_DATAIO_METRICS_H_
