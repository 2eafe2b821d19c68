//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/dataio/splits.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ccpred/core/error.h"
#include "ccpred/core/rng.h"

namespace ccpred::data {

DatasetSplit split_random(std::size_t n, const std::array<double, 3> &props,
                          std::uint64_t seed) {
  double sum = 0.0;
  for (double p: props) {
    if (!(p >= 0.0))
      throw Error(ErrorCode::kBadProportions, "negative proportion");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorCode::kBadProportions,
                "proportions sum to " + std::to_string(sum));
  std::array<std::size_t, 3> size {};
  std::array<double, 3> rem {};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double exact = props[i] * static_cast<double>(n);
    size[i] = static_cast<std::size_t>(std::floor(exact));
    rem[i] = exact - static_cast<double>(size[i]);
    assigned += size[i];
  }
  std::array<std::size_t, 3> order { 0, 1, 2 };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned)
    ++size[order[k % 3]];

  Rng rng(seed);
  std::vector<std::size_t> perm = rng.permutation(n);
  DatasetSplit s;
  s.seed = seed;
  s.proportions = props;
  auto first = perm.begin();
  s.train.assign(first, first + size[0]);
  s.validation.assign(first + size[0], first + size[0] + size[1]);
  s.test.assign(first + size[0] + size[1], perm.end());
  return s;
}

std::vector<IndexList> kfold(std::size_t n, std::size_t k,
                             std::uint64_t seed) {
  if (k < 1)
    throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (k > n)
    throw Error(ErrorCode::kKTooLarge,
                "k = " + std::to_string(k) + " exceeds n = "
                  + std::to_string(n));
  Rng rng(seed);
  std::vector<std::size_t> perm = rng.permutation(n);
  std::vector<IndexList> folds(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t len = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(perm.begin() + pos, perm.begin() + pos + len);
    pos += len;
  }
  return folds;
}

}  // namespace ccpred::data
