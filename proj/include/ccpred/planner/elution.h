//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_PLANNER_ELUTION_H_
#define CCPRED_PLANNER_ELUTION_H_

namespace ccpred::plan {

// mL.
struct ElutionVolumes {
  double v1 = 0.0;
  double v2 = 0.0;
  double delta = 0.0;  // v2 - v1
  bool operator==(const ElutionVolumes &) const = default;
};

// Marks a record whose times could not be read.
constexpr double kInvalidTime = -1.0;

// flow in mL/min, times in min. delta is flow * (t2 - t1), not v2 - v1.
//
// Throws kSentinelInput (either time is -1), kOrderError (t2 <= t1),
// kInvalidArgument (flow <= 0, negative or non-finite time).
ElutionVolumes volumes_from_times(double flow, double t1, double t2);

}  // namespace ccpred::plan

#endif  // CCPRED_PLANNER_ELUTION_H_
