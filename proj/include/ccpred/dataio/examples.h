//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_DATAIO_EXAMPLES_H_
#define CCPRED_DATAIO_EXAMPLES_H_

#include <vector>

#include "ccpred/dataio/records.h"
#include "ccpred/dataio/splits.h"
#include "ccpred/models/baseline.h"
#include "ccpred/models/featurizer.h"
#include "ccpred/models/training.h"

namespace ccpred::data {

// Records must be valid; targets come from volumes_from_times.
std::vector<model::Example>
to_examples(const std::vector<ExperimentRecord> &records,
            model::Featurizer &featurizer);

struct BaselineTable {
  std::vector<model::BaselineRow> rows;
  std::vector<model::BaselineTarget> targets;
};

BaselineTable to_baseline_table(const std::vector<ExperimentRecord> &records,
                                model::Featurizer &featurizer);

template <class T>
std::vector<T> select(const std::vector<T> &items, const IndexList &idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (std::size_t i: idx)
    out.push_back(items.at(i));
  return out;
}

}  // namespace ccpred::data

#endif  // CCPRED_DATAIO_EXAMPLES_H_
