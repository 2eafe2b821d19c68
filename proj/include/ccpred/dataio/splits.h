//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_DATAIO_SPLITS_H_
#define CCPRED_DATAIO_SPLITS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ccpred::data {

using IndexList = std::vector<std::size_t>;

struct DatasetSplit {
  IndexList train;
  IndexList validation;
  IndexList test;
  std::uint64_t seed = 0;
  std::array<double, 3> proportions { 0.8, 0.1, 0.1 };
};

// Sizes by largest remainder (ties to the earlier part), so each part is
// within one record of its target.
//
// Throws kBadProportions (negative or not summing to 1 within 1e-9).
DatasetSplit split_random(std::size_t n, const std::array<double, 3> &props,
                          std::uint64_t seed);

// The first n % k folds hold one extra index. Throws kKTooLarge (k > n),
// kInvalidArgument (k < 1).
std::vector<IndexList> kfold(std::size_t n, std::size_t k,
                             std::uint64_t seed);

}  // namespace ccpred::data

#endif  // CCPRED_DATAIO_SPLITS_H_
