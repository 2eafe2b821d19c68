//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_MODELS_NORMALIZATION_H_
#define CCPRED_MODELS_NORMALIZATION_H_

#include <cstddef>
#include <span>
#include <vector>

namespace ccpred::model {

// Per-column affine standardization. Columns with (near) zero spread keep
// std = 1 so they map to 0 rather than blowing up.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> std;

  static Standardizer identity(std::size_t width);
  // rows must share one width; throws kEmptyDataset for no rows.
  static Standardizer fit(const std::vector<std::vector<double>> &rows);

  std::size_t width() const { return mean.size(); }
  double forward(std::size_t col, double v) const {
    return (v - mean[col]) / std[col];
  }
  double inverse(std::size_t col, double z) const {
    return z * std[col] + mean[col];
  }

  bool operator==(const Standardizer &) const = default;
};

}  // namespace ccpred::model

#endif  // CCPRED_MODELS_NORMALIZATION_H_
