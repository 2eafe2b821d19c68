//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/models/normalization.h"

#include <cmath>

#include "ccpred/core/error.h"

namespace ccpred::model {

Standardizer Standardizer::identity(std::size_t width) {
  return { std::vector<double>(width, 0.0), std::vector<double>(width, 1.0) };
}

Standardizer Standardizer::fit(const std::vector<std::vector<double>> &rows) {
  if (rows.empty())
    throw Error(ErrorCode::kEmptyDataset, "cannot fit normalization on 0 rows");
  const std::size_t w = rows[0].size();
  Standardizer s = identity(w);
  const double n = static_cast<double>(rows.size());
  for (const auto &r: rows) {
    if (r.size() != w)
      throw Error(ErrorCode::kWidthMismatch,
                  "rows of width " + std::to_string(r.size()) + " and "
                    + std::to_string(w));
    for (std::size_t c = 0; c < w; ++c)
      s.mean[c] += r[c];
  }
  for (double &m: s.mean)
    m /= n;
  std::vector<double> var(w, 0.0);
  for (const auto &r: rows) {
    for (std::size_t c = 0; c < w; ++c)
      var[c] += (r[c] - s.mean[c]) * (r[c] - s.mean[c]);
  }
  for (std::size_t c = 0; c < w; ++c) {
    double sd = std::sqrt(var[c] / n);
    s.std[c] = sd > 1e-12 * std::max(1.0, std::abs(s.mean[c])) ? sd : 1.0;
  }
  return s;
}

}  // namespace ccpred::model
