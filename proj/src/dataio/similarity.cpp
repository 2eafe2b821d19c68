//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/dataio/similarity.h"

#include <algorithm>

namespace ccpred::data {

std::vector<SimilarityGroup>
similarity_partition(const std::vector<chem::Fingerprint> &train,
                     const std::vector<chem::Fingerprint> &test,
                     const std::vector<double> &thresholds) {
  // Group membership only depends on the best training match.
  std::vector<double> best(test.size(), -1.0);
  for (std::size_t i = 0; i < test.size(); ++i) {
    for (const chem::Fingerprint &t: train)
      best[i] = std::max(best[i], chem::tanimoto(test[i], t));
  }
  std::vector<SimilarityGroup> out;
  out.reserve(thresholds.size());
  for (double th: thresholds) {
    SimilarityGroup g { th, {} };
    for (std::size_t i = 0; i < test.size(); ++i) {
      if (best[i] >= th)
        g.members.push_back(i);
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace ccpred::data
