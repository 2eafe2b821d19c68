//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_DATAIO_SIMILARITY_H_
#define CCPRED_DATAIO_SIMILARITY_H_

#include <cstddef>
#include <vector>

#include "ccpred/chemfeat/fingerprint.h"

namespace ccpred::data {

inline const std::vector<double> kSimilarityThresholds = {
  0.65, 0.55, 0.45, 0.35, 0.25, 0.15
};

struct SimilarityGroup {
  double threshold = 0.0;
  std::vector<std::size_t> members;  // test indices, ascending
};

// Test molecule i joins the group for t when some training fingerprint has
// tanimoto >= t with it.
//
// Throws kSchemeMismatch.
std::vector<SimilarityGroup>
similarity_partition(const std::vector<chem::Fingerprint> &train,
                     const std::vector<chem::Fingerprint> &test,
                     const std::vector<double> &thresholds =
                       kSimilarityThresholds);

}  // namespace ccpred::data

#endif  // CCPRED_DATAIO_SIMILARITY_H_
