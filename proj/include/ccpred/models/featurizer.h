//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_MODELS_FEATURIZER_H_
#define CCPRED_MODELS_FEATURIZER_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ccpred/chemfeat/descriptors.h"
#include "ccpred/chemfeat/fingerprint.h"
#include "ccpred/chemfeat/geometry.h"
#include "ccpred/chemfeat/overrides.h"
#include "ccpred/graphrep/conditions.h"
#include "ccpred/graphrep/graph_pair.h"
#include "ccpred/molparse/molecule.h"

namespace ccpred::model {

// 167 fingerprint bits + 16 descriptors + 9 solvent/column values.
constexpr std::size_t kBaselineWidth =
  chem::kFingerprintBits + chem::kNumDescriptors + graph::kCoreConditionWidth;

struct MoleculeFeatures {
  mol::MolGraph mol;
  chem::DescriptorVector descriptors;
  chem::Geometry geometry;
  chem::Fingerprint fingerprint;
};

// SMILES -> features, parsed once per distinct string. Injected descriptor
// and fingerprint values from the override table replace computed ones.
// Not safe for concurrent use (the cache is mutable).
class Featurizer {
public:
  Featurizer() = default;
  explicit Featurizer(chem::OverrideTable overrides);

  const MoleculeFeatures &molecule(const std::string &smiles);
  graph::GeoGraphPair pair(const std::string &smiles,
                           const graph::ExperimentalFeatures &exp);
  std::vector<double> baseline_row(const std::string &smiles,
                                   const graph::ExperimentalFeatures &exp);

private:
  chem::OverrideTable overrides_;
  std::map<std::string, std::unique_ptr<MoleculeFeatures>, std::less<>>
    cache_;
};

}  // namespace ccpred::model

#endif  // CCPRED_MODELS_FEATURIZER_H_
