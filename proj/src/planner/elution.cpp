//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/planner/elution.h"

#include <cmath>
#include <string>

#include "ccpred/core/error.h"
#include "ccpred/core/text.h"

namespace ccpred::plan {

ElutionVolumes volumes_from_times(double flow, double t1, double t2) {
  if (t1 == kInvalidTime || t2 == kInvalidTime)
    throw Error(ErrorCode::kSentinelInput, "record marked invalid (t = -1)");
  if (!(flow > 0.0) || !std::isfinite(flow))
    throw Error(ErrorCode::kInvalidArgument,
                "flow rate must be positive, got " + format_double(flow));
  if (!(t1 >= 0.0) || !std::isfinite(t1) || !std::isfinite(t2))
    throw Error(ErrorCode::kInvalidArgument,
                "times must be finite and >= 0, got " + format_double(t1)
                  + ", " + format_double(t2));
  if (!(t2 > t1))
    throw Error(ErrorCode::kOrderError,
                "t2 (" + format_double(t2) + ") must exceed t1 ("
                  + format_double(t1) + ")");
  return { flow * t1, flow * t2, flow * (t2 - t1) };
}

}  // namespace ccpred::plan
