//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/dataio/noise.h"

#include <cmath>
#include <string>

#include "ccpred/core/error.h"
#include "ccpred/core/rng.h"

namespace ccpred::data {

std::vector<double> inject_noise(const std::vector<double> &targets,
                                 double ratio, std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio <= 1.0))
    throw Error(ErrorCode::kRatioOutOfRange,
                "noise ratio " + std::to_string(ratio) + " outside [0, 1]");
  std::vector<double> out = targets;
  if (ratio == 0.0 || targets.empty())
    return out;
  double mean = 0.0;
  for (double t: targets)
    mean += t;
  mean /= static_cast<double>(targets.size());
  double var = 0.0;
  for (double t: targets)
    var += (t - mean) * (t - mean);
  const double sd = ratio * std::sqrt(var / static_cast<double>(targets.size()));
  Rng rng(seed);
  for (double &v: out)
    v += sd * rng.normal();
  return out;
}

}  // namespace ccpred::data
