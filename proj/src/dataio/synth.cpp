//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/dataio/synth.h"

#include <cmath>
#include <map>

#include "ccpred/chemfeat/descriptors.h"
#include "ccpred/core/error.h"
#include "ccpred/core/rng.h"
#include "ccpred/molparse/smiles.h"

namespace ccpred::data {

const std::vector<std::string> &synth_corpus() {
  static const std::vector<std::string> kCorpus = {
    "CCCCCCCC", "C=CCCCC", "C1CCCCC1", "CCCCCl", "c1ccccc1", "Cc1ccccc1",
    "c1ccc2ccccc2c1", "c1ccc(cc1)c1ccccc1", "Clc1ccccc1", "Brc1ccccc1",
    "c1ccsc1", "c1ccoc1", "CCOCC", "CCCCOCCCC", "C=CCOc1ccccc1",
    "COc1ccccc1", "CCOc1ccccc1", "COc1ccc(C)cc1", "CN(C)c1ccccc1",
    "c1ccc(Nc2ccccc2)cc1", "CCOC(C)=O", "CCCCOC(C)=O", "COC(=O)c1ccccc1",
    "CCOC(=O)c1ccccc1", "CC(=O)OCc1ccccc1", "CC(C)=O", "O=C1CCCCC1",
    "CC(=O)c1ccccc1", "O=Cc1ccccc1", "O=C(c1ccccc1)c1ccccc1",
    "O=C1c2ccccc2C(=O)c2ccccc12", "N#Cc1ccccc1", "O=[N+]([O-])c1ccccc1",
    "C1COCCO1", "COC(=O)c1ccccc1O", "c1ccncc1", "c1ccc2ncccc2c1",
    "c1ccc2[nH]ccc2c1", "C=CCc1ccccc1O", "Oc1ccccc1", "Cc1ccc(O)cc1",
    "COc1ccc(O)cc1", "OC1CCCCC1", "CCCCCCO", "OCc1ccccc1", "OCCc1ccccc1",
    "Nc1ccccc1", "O=Cc1ccc(O)cc1", "COc1cc(C=O)ccc1O", "CC(=O)Nc1ccccc1",
    "NC(=O)c1ccccc1", "O=C1CCC(=O)N1", "Cn1cnc2c1c(=O)n(C)c(=O)n2C",
    "OC(=O)c1ccccc1", "OC(=O)C=Cc1ccccc1", "CC(=O)Oc1ccccc1C(=O)O",
    "Oc1ccc(O)cc1", "Oc1cccc(O)c1", "OCCO", "OC(=O)c1ccc(O)cc1",
  };
  return kCorpus;
}

const std::vector<graph::EluentRatio> &synth_ratios() {
  static const std::vector<graph::EluentRatio> kRatios = {
    { 50, 1 }, { 20, 1 }, { 10, 1 }, { 5, 1 }, { 3, 1 }, { 2, 1 }, { 1, 1 },
  };
  return kRatios;
}

double RetentionLaw::v0(graph::ColumnSpec column) const {
  switch (column) {
  case graph::ColumnSpec::k4g:
    return 5.0;
  case graph::ColumnSpec::k8g:
    return 10.0;
  case graph::ColumnSpec::k25g:
    return 30.0;
  case graph::ColumnSpec::k40g:
    return 50.0;
  }
  return 5.0;
}

double RetentionLaw::v1(double tpsa, double hbd, double ea_fraction,
                        graph::ColumnSpec column) const {
  const double z = c0 + c1 * tpsa / 100.0 + c2 * hbd
                   - c3 * std::log(1.0 + 9.0 * ea_fraction);
  return v0(column) * (1.0 + std::exp(z));
}

SynthDataset synth_dataset(const SynthOptions &options) {
  if (options.n == 0)
    throw Error(ErrorCode::kInvalidArgument, "synthetic dataset needs n >= 1");
  if (options.columns.empty())
    throw Error(ErrorCode::kInvalidArgument, "no column specs");
  if (!(options.noise_sigma >= 0.0))
    throw Error(ErrorCode::kInvalidArgument, "noise sigma must be >= 0");

  // Loading follows a fixed protocol per compound, the same in every
  // dataset. Drawing it per record would add covariates that carry no signal
  // but make every record unique, which lets a network memorize the
  // observation noise.
  struct Props {
    double tpsa, hbd, purity, mass, volume;
    graph::LoadingSolvent solvent;
  };
  Rng protocol(0x9e3779b97f4a7c15ULL);
  std::map<std::string, Props> props;
  for (const std::string &s: synth_corpus()) {
    const chem::DescriptorVector d = chem::descriptor_vector(mol::parse_smiles(s));
    Props p { d.tpsa(), d.hbd(), 0, 0, 0, graph::LoadingSolvent::kNone };
    p.purity = protocol.uniform(0.9, 1.0);
    p.mass = protocol.uniform(20.0, 200.0);
    p.volume = protocol.uniform(0.5, 3.0);
    p.solvent = static_cast<graph::LoadingSolvent>(protocol.index(4));
    props[s] = p;
  }

  const auto &corpus = synth_corpus();
  const auto &ratios = synth_ratios();
  const RetentionLaw &law = options.law;
  Rng rng(options.seed);
  SynthDataset out;
  out.records.reserve(options.n);
  for (std::size_t i = 0; i < options.n; ++i) {
    ExperimentRecord r;
    r.smiles = corpus[rng.index(corpus.size())];
    r.column = options.columns[rng.index(options.columns.size())];
    r.flow_rate = graph::recommended_flow_rate(r.column);
    r.ratio = ratios[rng.index(ratios.size())];
    const Props &p = props.at(r.smiles);
    r.purity = p.purity;
    r.sample_mass = p.mass;
    r.loading_solvent = p.solvent;
    r.loading_volume = p.volume;
    const double v1 = law.v1(p.tpsa, p.hbd, r.ratio.ea_fraction(), r.column);
    const double v2 = law.v2(v1);
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    double v1_obs = v1, v2_obs = v2;
    if (options.noise_sigma > 0.0) {
      v1_obs = v1 * std::exp(options.noise_sigma * z1);
      v2_obs = v1_obs + law.w * v1 * std::exp(options.noise_sigma * z2);
    }
    r.t1 = v1_obs / r.flow_rate;
    r.t2 = v2_obs / r.flow_rate;
    out.records.push_back(std::move(r));
    out.truth_v1.push_back(v1);
    out.truth_v2.push_back(v2);
  }
  return out;
}

}  // namespace ccpred::data
