//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_PLANNER_SEPARATION_H_
#define CCPRED_PLANNER_SEPARATION_H_

#include <string>
#include <vector>

#include "ccpred/graphrep/conditions.h"
#include "ccpred/models/featurizer.h"
#include "ccpred/models/qgeognn.h"

namespace ccpred::plan {

struct ElutionWindow {
  model::QuantileTriple v1;  // mL
  model::QuantileTriple v2;  // mL
  std::string id;
};

struct SeparationAssessment {
  double sp = 0.0;
  std::string first_eluter;
  double overlap = 0.0;  // A.v2.q90 - B.v1.q10, mL
  double total = 0.0;    // B.v1.q90 - A.v2.q10, mL
  bool clamped = false;  // raw ratio fell outside [0, 1]
};

// A is the window with the smaller v1.q50; ties go to the smaller v2.q50,
// then to the smaller id.
//
// Throws kInvalidArgument (non-monotone window), kDegenerateTotal (positive
// overlap with total <= 0).
SeparationAssessment separation_probability(const ElutionWindow &a,
                                            const ElutionWindow &b);

struct ConditionCandidate {
  graph::ColumnSpec column = graph::ColumnSpec::k4g;
  graph::EluentRatio ratio;
  double sample_mass = 0.0;  // mg
  graph::LoadingSolvent loading = graph::LoadingSolvent::kNone;
  double loading_volume = 0.0;  // mL

  graph::ExperimentalFeatures features() const;
};

struct RankedCondition {
  ConditionCandidate condition;
  ElutionWindow window_a;
  ElutionWindow window_b;
  SeparationAssessment assessment;
  // Set when the windows were contained in each other; sp is then 0.
  bool degenerate = false;
};

// Sorted by sp descending, then EA fraction ascending; stable otherwise.
// Throws kInvalidArgument for an empty candidate list.
std::vector<RankedCondition>
rank_conditions(const std::string &smiles_a, const std::string &smiles_b,
                const std::vector<ConditionCandidate> &candidates,
                const model::QGeoGNN &model, model::Featurizer &featurizer);

}  // namespace ccpred::plan

#endif  // CCPRED_PLANNER_SEPARATION_H_
