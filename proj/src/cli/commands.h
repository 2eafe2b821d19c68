//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Private to the CLI: per-subcommand arguments and their implementations.

#ifndef CCPRED_SRC_CLI_COMMANDS_H_
#define CCPRED_SRC_CLI_COMMANDS_H_

#include <spdlog/logger.h>

#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "ccpred/dataio/sweep.h"
#include "ccpred/dataio/synth.h"
#include "ccpred/models/baseline.h"
#include "ccpred/models/qgeognn.h"
#include "ccpred/models/training.h"

namespace ccpred::cli {

struct Context {
  std::ostream &out;
  std::shared_ptr<spdlog::logger> log;
  std::map<std::string, std::string> config;  // resolved, for manifests
  std::vector<std::string> config_files;
  // Options given on the command line or in the config file.
  std::vector<std::string> explicit_options;

  bool given(const std::string &name) const;
};

struct ParseArgs {
  std::vector<std::string> smiles;
  std::string input;
  std::string output;
};

struct FeaturizeArgs {
  std::vector<std::string> smiles;
  std::string input;
  std::string output;
  std::string overrides;
  bool codebook = false;
};

struct SynthArgs {
  data::SynthOptions synth;
  std::vector<std::string> columns { "4g" };
  std::string output;
};

struct TrainArgs {
  std::string data;
  std::string output;
  std::string model = "qgeognn";
  std::string overrides;
  model::QGeoGNNConfig config;
  model::BaselineMLPConfig baseline;
  std::vector<double> split { 0.8, 0.1, 0.1 };
  std::uint64_t split_seed = 0;
};

struct TransferArgs {
  std::string base;
  std::string data;
  std::string output;
  std::string overrides;
  std::string head = "least_squares";
  model::TransferConfig config;
  std::vector<double> split { 0.9, 0.1, 0.0 };
  std::uint64_t split_seed = 0;
};

struct EvalArgs {
  std::string checkpoint;
  std::string data;
  std::string predictions;
  std::string overrides;
};

struct SweepArgs {
  std::string data;
  std::string output;
  std::string kind = "train_proportion";
  std::string overrides;
  std::vector<double> grid;
  data::SweepOptions options;
  std::vector<double> split { 0.7, 0.1, 0.2 };
};

struct ConditionArgs {
  double sample_mass = 50.0;  // mg
  std::string loading = "DCM";
  double loading_volume = 1.0;  // mL
};

struct PredictArgs {
  std::string checkpoint;
  std::vector<std::string> smiles;
  std::string input;
  std::string data;
  std::string output;
  std::string overrides;
  std::string column = "4g";
  std::string ratio = "10/1";
  ConditionArgs condition;
};

struct PlanArgs {
  std::string a;
  std::string b;
  std::string checkpoint;
  std::string output;
  std::string overrides;
  std::vector<std::string> columns { "4g" };
  std::vector<std::string> ratios;
  ConditionArgs condition;
};

struct TraceArgs {
  std::string input;
  std::string output;
  std::string write_trace;
  bool synth = false;
  double center = 5.0;  // min
  double height = 1.0;
  double width = 0.2;  // min
  double baseline = 0.0;
  double noise = 0.0;
  double period = 1.0;  // s
  std::size_t samples = 1200;
  std::uint64_t seed = 0;
  double flow = 10.0;  // mL/min
  double k_sigma = 3.0;
  int consecutive = 5;
  double min_excess = 1e-3;
};

void cmd_parse(Context &ctx, const ParseArgs &args);
void cmd_featurize(Context &ctx, const FeaturizeArgs &args);
void cmd_synth(Context &ctx, const SynthArgs &args);
void cmd_train(Context &ctx, TrainArgs args);
void cmd_transfer(Context &ctx, TransferArgs args);
void cmd_eval(Context &ctx, const EvalArgs &args);
void cmd_sweep(Context &ctx, SweepArgs args);
void cmd_predict(Context &ctx, const PredictArgs &args);
void cmd_plan(Context &ctx, const PlanArgs &args);
void cmd_trace(Context &ctx, const TraceArgs &args);

}  // namespace ccpred::cli

#endif  // CCPRED_SRC_CLI_COMMANDS_H_
