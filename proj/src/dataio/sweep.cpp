//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/dataio/sweep.h"

#include <cmath>
#include <functional>
#include <ostream>
#include <string>

#include "ccpred/core/error.h"
#include "ccpred/core/text.h"
#include "ccpred/dataio/examples.h"
#include "ccpred/dataio/noise.h"
#include "ccpred/dataio/splits.h"

namespace ccpred::data {

namespace {

struct Pools {
  std::vector<model::Example> train;  // shuffled pool
  std::vector<model::Example> val;
  std::vector<model::Example> test;
};

Pools make_pools(const std::vector<model::Example> &data,
                 const SweepOptions &options) {
  if (options.replicates < 1)
    throw Error(ErrorCode::kInvalidArgument, "sweep needs replicates >= 1");
  if (data.empty())
    throw Error(ErrorCode::kEmptyDataset, "sweep needs data");
  const DatasetSplit s = split_random(data.size(), options.split,
                                      options.split_seed);
  Pools p { select(data, s.train), select(data, s.validation),
            select(data, s.test) };
  if (p.train.empty() || p.test.empty())
    throw Error(ErrorCode::kEmptyDataset, "sweep split leaves no train/test");
  return p;
}

using TrainFor = std::function<std::vector<model::Example>(int replicate)>;

SweepPoint run_point(double value, const TrainFor &train_for,
                     const Pools &pools, const SweepOptions &options) {
  SweepPoint p { value, 0, {}, {} };
  const double w = 1.0 / options.replicates;
  for (int r = 0; r < options.replicates; ++r) {
    const std::vector<model::Example> train = train_for(r);
    model::QGeoGNNConfig config = options.config;
    config.seed += static_cast<std::uint64_t>(r);
    model::QGeoGNN m = model::train_qgeognn(config, train, pools.val);
    const Evaluation e = evaluate_model(m, pools.test);
    p.train_size = train.size();
    p.metrics.n = e.metrics.n;
    for (std::size_t t = 0; t < 2; ++t) {
      p.metrics.r2[t] += w * e.metrics.r2[t];
      p.metrics.mae[t] += w * e.metrics.mae[t];
      p.coverage[t] += w * e.coverage[t];
    }
  }
  return p;
}

}  // namespace

std::string_view to_string(SweepKind kind) {
  return kind == SweepKind::kTrainProportion ? "train_proportion"
                                             : "noise_ratio";
}

SweepResult sweep_train_proportion(const std::vector<model::Example> &data,
                                   const std::vector<double> &grid,
                                   const SweepOptions &options,
                                   const SweepCallback &on_point) {
  const Pools pools = make_pools(data, options);
  SweepResult out { SweepKind::kTrainProportion, {} };
  for (double p: grid) {
    if (!(p > 0.0 && p <= options.split[0] + 1e-12))
      throw Error(ErrorCode::kInvalidArgument,
                  "training proportion " + std::to_string(p)
                    + " outside (0, " + std::to_string(options.split[0])
                    + "]");
    const auto k = std::min(
      pools.train.size(),
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(
                                 p * static_cast<double>(data.size())))));
    const std::vector<model::Example> train(pools.train.begin(),
                                            pools.train.begin() + k);
    out.points.push_back(
      run_point(p, [&](int) { return train; }, pools, options));
    if (on_point)
      on_point(out.points.back());
  }
  return out;
}

SweepResult sweep_noise(const std::vector<model::Example> &data,
                        const std::vector<double> &grid,
                        const SweepOptions &options,
                        const SweepCallback &on_point) {
  const Pools pools = make_pools(data, options);
  std::vector<double> v1, v2;
  for (const model::Example &e: pools.train) {
    v1.push_back(e.v1);
    v2.push_back(e.v2);
  }
  SweepResult out { SweepKind::kNoiseRatio, {} };
  for (double r: grid) {
    const auto noisy = [&](int replicate) {
      const std::uint64_t seed =
        options.noise_seed + static_cast<std::uint64_t>(replicate);
      const std::vector<double> n1 = inject_noise(v1, r, seed);
      const std::vector<double> n2 =
        inject_noise(v2, r, seed ^ 0x5bd1e995ULL);
      std::vector<model::Example> train = pools.train;
      for (std::size_t i = 0; i < train.size(); ++i) {
        train[i].v1 = n1[i];
        train[i].v2 = n2[i];
      }
      return train;
    };
    out.points.push_back(run_point(r, noisy, pools, options));
    if (on_point)
      on_point(out.points.back());
  }
  return out;
}

void write_sweep_table(std::ostream &os, const SweepResult &result) {
  os << "sweep,value,train_size,r2_v1,r2_v2,mae_v1,mae_v2,coverage_v1,"
        "coverage_v2\n";
  for (const SweepPoint &p: result.points) {
    os << to_string(result.kind) << ',' << format_double(p.value) << ','
       << p.train_size << ',' << format_double(p.metrics.r2[0]) << ','
       << format_double(p.metrics.r2[1]) << ','
       << format_double(p.metrics.mae[0]) << ','
       << format_double(p.metrics.mae[1]) << ','
       << format_double(p.coverage[0]) << ',' << format_double(p.coverage[1])
       << '\n';
  }
}

int count_inversions(const SweepResult &result) {
  const double sign = result.kind == SweepKind::kTrainProportion ? 1.0 : -1.0;
  int n = 0;
  for (std::size_t i = 1; i < result.points.size(); ++i) {
    const auto &a = result.points[i - 1].metrics.r2;
    const auto &b = result.points[i].metrics.r2;
    if (sign * (0.5 * (b[0] + b[1]) - 0.5 * (a[0] + a[1])) < 0.0)
      ++n;
  }
  return n;
}

}  // namespace ccpred::data
