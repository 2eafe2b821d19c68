//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_DATAIO_NOISE_H_
#define CCPRED_DATAIO_NOISE_H_

#include <cstdint>
#include <vector>

namespace ccpred::data {

// Adds N(0, (ratio * sd(targets))^2) to each value; sd is the population
// standard deviation. Throws kRatioOutOfRange for ratio outside [0, 1].
std::vector<double> inject_noise(const std::vector<double> &targets,
                                 double ratio, std::uint64_t seed);

}  // namespace ccpred::data

#endif  // CCPRED_DATAIO_NOISE_H_
