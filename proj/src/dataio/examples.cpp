//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/dataio/examples.h"

namespace ccpred::data {

std::vector<model::Example>
to_examples(const std::vector<ExperimentRecord> &records,
            model::Featurizer &featurizer) {
  std::vector<model::Example> out;
  out.reserve(records.size());
  for (const ExperimentRecord &r: records) {
    const plan::ElutionVolumes v = r.volumes();
    out.push_back({ featurizer.pair(r.smiles, r.features()), v.v1, v.v2 });
  }
  return out;
}

BaselineTable to_baseline_table(const std::vector<ExperimentRecord> &records,
                                model::Featurizer &featurizer) {
  BaselineTable t;
  t.rows.reserve(records.size());
  t.targets.reserve(records.size());
  for (const ExperimentRecord &r: records) {
    const plan::ElutionVolumes v = r.volumes();
    t.rows.push_back(featurizer.baseline_row(r.smiles, r.features()));
    t.targets.push_back({ v.v1, v.v2 });
  }
  return t;
}

}  // namespace ccpred::data
