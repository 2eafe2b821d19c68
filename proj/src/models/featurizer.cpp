//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/models/featurizer.h"

#include "ccpred/molparse/smiles.h"

namespace ccpred::model {

Featurizer::Featurizer(chem::OverrideTable overrides)
  : overrides_(std::move(overrides)) { }

const MoleculeFeatures &Featurizer::molecule(const std::string &smiles) {
  auto it = cache_.find(smiles);
  if (it != cache_.end())
    return *it->second;
  auto f = std::make_unique<MoleculeFeatures>();
  f->mol = mol::parse_smiles(smiles);
  auto ov = overrides_.find(smiles);
  const chem::DescriptorOverrides none;
  f->descriptors = chem::descriptor_vector(
    f->mol, ov != overrides_.end() ? ov->second.descriptors : none);
  f->geometry = chem::idealized_geometry(f->mol);
  if (ov != overrides_.end() && ov->second.fingerprint)
    f->fingerprint = *ov->second.fingerprint;
  else
    f->fingerprint = chem::fingerprint(f->mol);
  return *cache_.emplace(smiles, std::move(f)).first->second;
}

graph::GeoGraphPair Featurizer::pair(const std::string &smiles,
                                     const graph::ExperimentalFeatures &exp) {
  const MoleculeFeatures &f = molecule(smiles);
  return graph::build_pair(f.mol, f.descriptors, f.geometry, exp);
}

std::vector<double>
Featurizer::baseline_row(const std::string &smiles,
                         const graph::ExperimentalFeatures &exp) {
  const MoleculeFeatures &f = molecule(smiles);
  std::vector<double> row;
  row.reserve(kBaselineWidth);
  for (std::size_t i = 0; i < chem::kFingerprintBits; ++i)
    row.push_back(f.fingerprint.bits.test(i) ? 1.0 : 0.0);
  for (double v: f.descriptors.values)
    row.push_back(v);
  for (double v: exp.core())
    row.push_back(v);
  return row;
}

}  // namespace ccpred::model
