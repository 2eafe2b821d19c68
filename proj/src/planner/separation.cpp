//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/planner/separation.h"

#include <algorithm>
#include <tuple>

#include "ccpred/core/error.h"
#include "ccpred/core/text.h"

namespace ccpred::plan {

namespace {

bool monotone(const model::QuantileTriple &t) {
  return t.q10 <= t.q50 && t.q50 <= t.q90;
}

}  // namespace

SeparationAssessment separation_probability(const ElutionWindow &a,
                                            const ElutionWindow &b) {
  for (const ElutionWindow *w: { &a, &b }) {
    if (!monotone(w->v1) || !monotone(w->v2))
      throw Error(ErrorCode::kInvalidArgument,
                  "window '" + w->id + "' has unordered quantiles");
  }
  const bool a_first = std::tie(a.v1.q50, a.v2.q50, a.id)
                       <= std::tie(b.v1.q50, b.v2.q50, b.id);
  const ElutionWindow &first = a_first ? a : b;
  const ElutionWindow &second = a_first ? b : a;

  SeparationAssessment s;
  s.first_eluter = first.id;
  s.overlap = first.v2.q90 - second.v1.q10;
  s.total = second.v1.q90 - first.v2.q10;
  if (s.overlap <= 0.0) {
    s.sp = 1.0;
    return s;
  }
  if (!(s.total > 0.0))
    throw Error(ErrorCode::kDegenerateTotal,
                "windows overlap by " + format_double(s.overlap)
                  + " mL but total span is " + format_double(s.total) + " mL");
  const double raw = 1.0 - s.overlap / s.total;
  s.sp = std::clamp(raw, 0.0, 1.0);
  s.clamped = s.sp != raw;
  return s;
}

graph::ExperimentalFeatures ConditionCandidate::features() const {
  return graph::make_experimental_features(column, ratio, sample_mass, loading,
                                           loading_volume);
}

std::vector<RankedCondition>
rank_conditions(const std::string &smiles_a, const std::string &smiles_b,
                const std::vector<ConditionCandidate> &candidates,
                const model::QGeoGNN &model, model::Featurizer &featurizer) {
  if (candidates.empty())
    throw Error(ErrorCode::kInvalidArgument, "no candidate conditions");
  std::vector<graph::GeoGraphPair> pairs;
  pairs.reserve(2 * candidates.size());
  for (const ConditionCandidate &c: candidates) {
    const graph::ExperimentalFeatures exp = c.features();
    pairs.push_back(featurizer.pair(smiles_a, exp));
    pairs.push_back(featurizer.pair(smiles_b, exp));
  }
  std::vector<const graph::GeoGraphPair *> ptrs;
  for (const auto &p: pairs)
    ptrs.push_back(&p);
  const std::vector<model::QuantilePrediction> pred = model.predict(ptrs);

  std::vector<RankedCondition> out;
  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    RankedCondition r;
    r.condition = candidates[i];
    r.window_a = { pred[2 * i].v1, pred[2 * i].v2, "A" };
    r.window_b = { pred[2 * i + 1].v1, pred[2 * i + 1].v2, "B" };
    try {
      r.assessment = separation_probability(r.window_a, r.window_b);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kDegenerateTotal)
        throw;
      r.degenerate = true;
      r.assessment = {};
      r.assessment.sp = 0.0;
      r.assessment.clamped = true;
    }
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedCondition &x, const RankedCondition &y) {
    if (x.assessment.sp != y.assessment.sp)
      return x.assessment.sp > y.assessment.sp;
    return x.condition.ratio.ea_fraction() < y.condition.ratio.ea_fraction();
  });
  return out;
}

}  // namespace ccpred::plan
