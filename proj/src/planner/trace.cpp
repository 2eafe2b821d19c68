//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/planner/trace.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "ccpred/core/error.h"
#include "ccpred/core/rng.h"
#include "ccpred/core/text.h"

namespace ccpred::plan {

namespace {

constexpr std::size_t kMinBaseline = 20;

// First index i >= from such that pred holds on [i, i + m).
template <class Pred>
std::size_t find_run(const std::vector<double> &y, std::size_t from,
                     std::size_t m, Pred pred) {
  std::size_t run = 0;
  for (std::size_t i = from; i < y.size(); ++i) {
    run = pred(y[i]) ? run + 1 : 0;
    if (run == m)
      return i + 1 - m;
  }
  return y.size();
}

}  // namespace

std::size_t baseline_window(std::size_t num_samples) {
  return std::max(kMinBaseline, num_samples / 20);
}

PeakBounds detect_peak_bounds(const TraceSignal &trace,
                              const DetectOptions &options) {
  if (!(trace.sample_period_s > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "sample period must be positive");
  if (options.consecutive < 1 || !(options.k_sigma >= 0.0)
      || !(options.min_excess >= 0.0))
    throw Error(ErrorCode::kInvalidArgument, "bad detection options");
  const auto &y = trace.absorbance;
  const std::size_t n = y.size();
  const std::size_t w = baseline_window(n);
  const std::size_t m = static_cast<std::size_t>(options.consecutive);
  if (n < 2 || n < w + m)
    throw Error(ErrorCode::kTooShortTrace,
                std::to_string(n) + " samples; need at least "
                  + std::to_string(std::max<std::size_t>(2, w + m)));
  double mean = 0.0;
  for (std::size_t i = 0; i < w; ++i)
    mean += y[i];
  mean /= static_cast<double>(w);
  double var = 0.0;
  for (std::size_t i = 0; i < w; ++i)
    var += (y[i] - mean) * (y[i] - mean);
  const double sd = std::sqrt(var / static_cast<double>(w));
  const double thr = mean + std::max(options.k_sigma * sd, options.min_excess);

  const std::size_t up =
    find_run(y, w, m, [thr](double v) { return v > thr; });
  if (up == n)
    return {};
  // The excursion ends at the first sample back at or below the threshold.
  std::size_t peak = up;
  for (std::size_t i = up; i < n && y[i] > thr; ++i) {
    if (y[i] > y[peak])
      peak = i;
  }
  const std::size_t down =
    find_run(y, peak + 1, m, [thr](double v) { return v < thr; });
  if (down == n)
    return {};
  return { trace.time_min(up), trace.time_min(down), true };
}

TraceSignal slice_trace(const TraceSignal &trace, std::size_t begin,
                        std::size_t count) {
  if (begin > trace.absorbance.size()
      || count > trace.absorbance.size() - begin)
    throw Error(ErrorCode::kInvalidArgument, "slice outside the trace");
  TraceSignal out = trace;
  out.absorbance.assign(trace.absorbance.begin() + begin,
                        trace.absorbance.begin() + begin + count);
  return out;
}

TraceSignal synth_trace(const std::vector<GaussianPeak> &peaks,
                        double baseline, double noise_sigma,
                        double sample_period_s, std::size_t num_samples,
                        std::uint64_t seed, double flow_rate) {
  if (!(sample_period_s > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "sample period must be positive");
  if (!(noise_sigma >= 0.0))
    throw Error(ErrorCode::kInvalidArgument, "noise sigma must be >= 0");
  for (const GaussianPeak &p: peaks) {
    if (!(p.width_min > 0.0))
      throw Error(ErrorCode::kInvalidArgument, "peak width must be positive");
  }
  TraceSignal t;
  t.sample_period_s = sample_period_s;
  t.flow_rate = flow_rate;
  t.absorbance.resize(num_samples);
  Rng rng(seed);
  for (std::size_t i = 0; i < num_samples; ++i) {
    const double time = t.time_min(i);
    double v = baseline;
    for (const GaussianPeak &p: peaks) {
      const double z = (time - p.center_min) / p.width_min;
      v += p.height * std::exp(-0.5 * z * z);
    }
    if (noise_sigma > 0.0)
      v += noise_sigma * rng.normal();
    t.absorbance[i] = v;
  }
  return t;
}

void write_trace(std::ostream &os, const TraceSignal &trace) {
  os << "# sample_period_s=" << format_double(trace.sample_period_s) << '\n'
     << "# flow_rate_ml_min=" << format_double(trace.flow_rate) << '\n'
     << "time_min,absorbance\n";
  for (std::size_t i = 0; i < trace.absorbance.size(); ++i)
    os << format_double(trace.time_min(i)) << ','
       << format_double(trace.absorbance[i]) << '\n';
}

TraceSignal read_trace(std::istream &is) {
  TraceSignal t;
  bool have_period = false, have_flow = false, have_header = false;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](ErrorCode code, const std::string &msg) {
    throw Error(code, "trace line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty())
      continue;
    if (s.front() == '#') {
      s = trim(s.substr(1));
      const auto eq = s.find('=');
      if (eq == std::string_view::npos)
        continue;
      const std::string_view key = trim(s.substr(0, eq));
      const auto value = parse_double(trim(s.substr(eq + 1)));
      if (key == "sample_period_s" || key == "flow_rate_ml_min") {
        if (!value || !(*value > 0.0))
          fail(ErrorCode::kParseError, "bad value for " + std::string(key));
        if (key == "sample_period_s") {
          t.sample_period_s = *value;
          have_period = true;
        } else {
          t.flow_rate = *value;
          have_flow = true;
        }
      }
      continue;
    }
    if (!have_header) {
      if (s != "time_min,absorbance")
        fail(ErrorCode::kSchemaError,
             "expected header 'time_min,absorbance', got '" + std::string(s)
               + "'");
      have_header = true;
      continue;
    }
    const auto cells = split(s, ',');
    if (cells.size() != 2)
      fail(ErrorCode::kParseError, "expected 2 columns");
    const auto a = parse_double(trim(cells[1]));
    if (!a || !parse_double(trim(cells[0])))
      fail(ErrorCode::kParseError, "non-numeric cell");
    t.absorbance.push_back(*a);
  }
  if (!have_period || !have_flow || !have_header)
    throw Error(ErrorCode::kSchemaError,
                "trace needs sample_period_s, flow_rate_ml_min and a header");
  return t;
}

TraceSignal load_trace(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::kIoError, "cannot open trace '" + path + "'");
  return read_trace(in);
}

}  // namespace ccpred::plan
