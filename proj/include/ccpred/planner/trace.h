//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_PLANNER_TRACE_H_
#define CCPRED_PLANNER_TRACE_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ccpred::plan {

// Sample i is taken at i * sample_period_s seconds.
struct TraceSignal {
  double sample_period_s = 1.0;
  double flow_rate = 10.0;  // mL/min
  std::vector<double> absorbance;

  double time_min(std::size_t i) const {
    return static_cast<double>(i) * sample_period_s / 60.0;
  }
  bool operator==(const TraceSignal &) const = default;
};

struct PeakBounds {
  double t1 = -1.0;  // min
  double t2 = -1.0;  // min
  bool valid = false;
  bool operator==(const PeakBounds &) const = default;
};

struct DetectOptions {
  double k_sigma = 3.0;
  int consecutive = 5;
  // Lower bound on threshold - baseline, so a noiseless flat baseline does
  // not trigger on rounding.
  double min_excess = 1e-3;
};

// First baseline_window(n) samples estimate the baseline.
std::size_t baseline_window(std::size_t num_samples);

// The threshold is mean + max(k_sigma * sd, min_excess) over the baseline
// window. t1 starts the first run of `consecutive` samples above it; t2
// starts the first such run below it after the maximum of that excursion.
// No crossing (or no return) gives the -1 sentinel.
//
// Throws kTooShortTrace, kInvalidArgument.
PeakBounds detect_peak_bounds(const TraceSignal &trace,
                              const DetectOptions &options = {});

// Samples [begin, begin + count) as a new trace starting at time 0.
TraceSignal slice_trace(const TraceSignal &trace, std::size_t begin,
                        std::size_t count);

struct GaussianPeak {
  double center_min = 0.0;
  double height = 1.0;
  double width_min = 0.1;  // standard deviation
};

// Throws kInvalidArgument for non-positive widths or period.
TraceSignal synth_trace(const std::vector<GaussianPeak> &peaks,
                        double baseline, double noise_sigma,
                        double sample_period_s, std::size_t num_samples,
                        std::uint64_t seed, double flow_rate = 10.0);

// Header lines "# sample_period_s=<v>" and "# flow_rate_ml_min=<v>", then
// "time_min,absorbance" and one row per sample.
void write_trace(std::ostream &os, const TraceSignal &trace);
// Throws kParseError, kSchemaError.
TraceSignal read_trace(std::istream &is);
// Throws kIoError plus the above.
TraceSignal load_trace(const std::string &path);

}  // namespace ccpred::plan

#endif  // CCPRED_PLANNER_TRACE_H_
