//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/cli/cli.h"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <functional>
#include <ostream>

#include "CLI11.hpp"
#include "ccpred/core/error.h"
#include "commands.h"

namespace ccpred::cli {

bool Context::given(const std::string &name) const {
  return std::find(explicit_options.begin(), explicit_options.end(), name)
         != explicit_options.end();
}

namespace {

struct Command {
  std::vector<std::string> required;
  std::function<void(Context &)> action;
};

std::string option_key(const CLI::Option *opt) {
  return opt->get_lnames().empty() ? opt->get_name() : opt->get_lnames()[0];
}

// Values from the file fill options the command line left unset.
void merge_config(CLI::App &app, CLI::App &sub, const std::string &path) {
  for (const auto &[key, value]: load_config(path)) {
    CLI::Option *opt = nullptr;
    if (key != "config" && key != "help") {
      opt = sub.get_option_no_throw("--" + key);
      if (opt == nullptr)
        opt = app.get_option_no_throw("--" + key);
    }
    if (opt == nullptr)
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown config key '" + key + "' for " + sub.get_name());
    if (opt->count() > 0)
      continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

std::string resolved_value(const CLI::Option *opt) {
  if (opt->count() == 0) {
    std::string d = opt->get_default_str();
    if (d.size() >= 2 && d.front() == '[' && d.back() == ']')
      d = d.substr(1, d.size() - 2);
    return d;
  }
  std::string s;
  for (const std::string &r: opt->results())
    s += (s.empty() ? "" : ",") + r;
  return s;
}

std::shared_ptr<spdlog::logger> make_logger(std::ostream &err,
                                            const std::string &level) {
  const spdlog::level::level_enum lv = spdlog::level::from_str(level);
  if (lv == spdlog::level::off && level != "off")
    throw Error(ErrorCode::kInvalidArgument,
                "unknown log level '" + level + "'");
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
  auto log = std::make_shared<spdlog::logger>("ccpred", sink);
  log->set_pattern("[%l] %v");
  log->set_level(lv);
  return log;
}

void add_model_options(CLI::App *s, model::QGeoGNNConfig &c) {
  s->add_option("--layers", c.num_layers, "GIN layers per stream");
  s->add_option("--embed-dim", c.embed_dim, "Hidden width");
  s->add_option("--batch-size", c.batch_size, "Records per update");
  s->add_option("--epochs", c.max_epochs, "Maximum epochs");
  s->add_option("--lr", c.lr, "Initial learning rate");
  s->add_option("--lr-step", c.lr_step_size, "StepLR period in epochs");
  s->add_option("--lr-gamma", c.lr_gamma, "StepLR factor");
  s->add_option("--final-lr", c.final_lr, "Learning-rate floor");
  s->add_option("--patience", c.early_stop_patience,
                "Early-stopping patience in epochs");
  s->add_option("--micro-batch", c.micro_batch,
                "Records per forward pass; bounds memory only");
  s->add_option("--calibrate", c.calibrate_intervals,
                "Calibrate [q10, q90] on the validation split");
  s->add_option("--seed", c.seed, "Parameter and shuffling seed");
}

void add_condition_options(CLI::App *s, ConditionArgs &c) {
  s->add_option("--sample-mass", c.sample_mass, "Sample mass in mg");
  s->add_option("--loading", c.loading, "Loading solvent: none, DCM, EA, PE");
  s->add_option("--loading-volume", c.loading_volume, "Loading volume in mL");
}

// Every failure line starts with a machine-readable reason code.
int fail(std::ostream &err, const std::string &what, int status) {
  err << "error: " << what << '\n';
  return status;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i)
    args.emplace_back(argv[i]);
  return run(args, out, err);
}

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app("Column-chromatography elution prediction and planning",
               "ccpred");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, log_level = "info";
  app.add_option("--config", config_path,
                 "key = value file; command-line flags take precedence");
  app.add_option("--log-level", log_level,
                 "trace, debug, info, warn, err, critical, off");

  std::map<CLI::App *, Command> commands;

  ParseArgs parse;
  CLI::App *s = app.add_subcommand(
    "parse", "Parse SMILES and dump atoms, bonds and rings");
  s->add_option("--smiles", parse.smiles, "SMILES string (repeatable)");
  s->add_option("--input", parse.input, "File with one SMILES per line");
  s->add_option("--output", parse.output, "Write the dump here");
  commands[s] = { {}, [&](Context &c) { cmd_parse(c, parse); } };

  FeaturizeArgs feat;
  s = app.add_subcommand("featurize", "Descriptor and fingerprint table, or "
                                      "the codebook and condition tables");
  s->add_option("--smiles", feat.smiles, "SMILES string (repeatable)");
  s->add_option("--input", feat.input, "File with one SMILES per line");
  s->add_option("--output", feat.output, "CSV output path");
  s->add_option("--overrides", feat.overrides, "Descriptor override CSV");
  s->add_flag("--codebook", feat.codebook,
              "Print the codebook, solvent and column tables");
  commands[s] = { {}, [&](Context &c) { cmd_featurize(c, feat); } };

  SynthArgs synth;
  s = app.add_subcommand("synth", "Generate a synthetic record dataset");
  s->add_option("--n", synth.synth.n, "Number of records");
  s->add_option("--seed", synth.synth.seed, "Generator seed");
  s->add_option("--columns", synth.columns, "Column sizes (4g, 8g, 25g, 40g)")
    ->delimiter(',');
  s->add_option("--sigma", synth.synth.noise_sigma, "Lognormal noise sigma");
  s->add_option("--output", synth.output, "Records CSV");
  commands[s] = { { "--output" }, [&](Context &c) { cmd_synth(c, synth); } };

  TrainArgs train;
  s = app.add_subcommand("train", "Train a QGeoGNN or baseline model");
  s->add_option("--data", train.data, "Records CSV");
  s->add_option("--output", train.output, "Checkpoint path");
  s->add_option("--model", train.model, "qgeognn or baseline");
  s->add_option("--overrides", train.overrides, "Descriptor override CSV");
  add_model_options(s, train.config);
  s->add_option("--hidden-layers", train.baseline.hidden_layers,
                "Baseline hidden layers");
  s->add_option("--hidden-units", train.baseline.hidden_units,
                "Baseline units per hidden layer");
  s->add_option("--split", train.split, "train,validation,test proportions")
    ->delimiter(',');
  s->add_option("--split-seed", train.split_seed, "Split seed");
  commands[s] = { { "--data", "--output" },
                  [&](Context &c) { cmd_train(c, train); } };

  TransferArgs tr;
  s = app.add_subcommand("transfer",
                         "Fine-tune a checkpoint on another column");
  s->add_option("--base", tr.base, "Base checkpoint");
  s->add_option("--data", tr.data, "Target-column records CSV");
  s->add_option("--output", tr.output, "Checkpoint path");
  s->add_option("--overrides", tr.overrides, "Descriptor override CSV");
  s->add_option("--head", tr.head, "Head init: least_squares or random");
  s->add_option("--ridge", tr.config.ridge, "Ridge for least_squares");
  s->add_option("--lr", tr.config.lr, "Initial learning rate");
  s->add_option("--lr-step", tr.config.lr_step_size, "StepLR period");
  s->add_option("--lr-gamma", tr.config.lr_gamma, "StepLR factor");
  s->add_option("--final-lr", tr.config.final_lr, "Learning-rate floor");
  s->add_option("--epochs", tr.config.max_epochs, "Maximum epochs");
  s->add_option("--batch-size", tr.config.batch_size, "Records per update");
  s->add_option("--patience", tr.config.early_stop_patience,
                "Early-stopping patience in epochs");
  s->add_option("--seed", tr.config.seed, "Shuffling and head seed");
  s->add_option("--split", tr.split, "train,validation,test proportions")
    ->delimiter(',');
  s->add_option("--split-seed", tr.split_seed, "Split seed");
  commands[s] = { { "--base", "--data", "--output" },
                  [&](Context &c) { cmd_transfer(c, tr); } };

  EvalArgs eval;
  s = app.add_subcommand("eval", "R2, MAE and interval coverage of a "
                                 "checkpoint on a record file");
  s->add_option("--checkpoint", eval.checkpoint, "Checkpoint path");
  s->add_option("--data", eval.data, "Records CSV");
  s->add_option("--predictions", eval.predictions,
                "Also write per-record predictions here");
  s->add_option("--overrides", eval.overrides, "Descriptor override CSV");
  commands[s] = { { "--checkpoint", "--data" },
                  [&](Context &c) { cmd_eval(c, eval); } };

  SweepArgs sweep;
  s = app.add_subcommand("sweep", "R2 against training proportion or "
                                  "label noise");
  s->add_option("--data", sweep.data, "Records CSV");
  s->add_option("--output", sweep.output, "Table path (default stdout)");
  s->add_option("--kind", sweep.kind, "train_proportion or noise_ratio");
  s->add_option("--grid", sweep.grid, "Sweep values (default per kind)")
    ->delimiter(',');
  s->add_option("--overrides", sweep.overrides, "Descriptor override CSV");
  add_model_options(s, sweep.options.config);
  s->add_option("--split", sweep.split,
                "train pool,validation,test proportions")
    ->delimiter(',');
  s->add_option("--split-seed", sweep.options.split_seed, "Split seed");
  s->add_option("--noise-seed", sweep.options.noise_seed, "Noise seed");
  s->add_option("--replicates", sweep.options.replicates,
                "Runs per grid point; metrics are means")
    ->check(CLI::PositiveNumber);
  commands[s] = { { "--data" }, [&](Context &c) { cmd_sweep(c, sweep); } };

  PredictArgs pred;
  s = app.add_subcommand("predict", "Quantile elution windows");
  s->add_option("--checkpoint", pred.checkpoint, "Checkpoint path");
  s->add_option("--smiles", pred.smiles, "SMILES string (repeatable)");
  s->add_option("--input", pred.input, "File with one SMILES per line");
  s->add_option("--data", pred.data,
                "Records CSV; each row's own conditions are used");
  s->add_option("--output", pred.output, "CSV path (default stdout)");
  s->add_option("--overrides", pred.overrides, "Descriptor override CSV");
  s->add_option("--column", pred.column, "Column size (4g, 8g, 25g, 40g)");
  s->add_option("--ratio", pred.ratio, "PE/EA ratio, e.g. 10/1");
  add_condition_options(s, pred.condition);
  commands[s] = { { "--checkpoint" },
                  [&](Context &c) { cmd_predict(c, pred); } };

  PlanArgs plan;
  s = app.add_subcommand("plan", "Rank eluent conditions for a compound "
                                 "pair by separation probability");
  s->add_option("--a", plan.a, "SMILES of compound A");
  s->add_option("--b", plan.b, "SMILES of compound B");
  s->add_option("--checkpoint", plan.checkpoint, "Checkpoint path");
  s->add_option("--column", plan.columns, "Column sizes (4g, 8g, 25g, 40g)")
    ->delimiter(',');
  s->add_option("--ratios", plan.ratios, "PE/EA ratios, e.g. 20/1,50/1")
    ->delimiter(',');
  s->add_option("--output", plan.output, "CSV path (default stdout)");
  s->add_option("--overrides", plan.overrides, "Descriptor override CSV");
  add_condition_options(s, plan.condition);
  commands[s] = { { "--a", "--b", "--checkpoint", "--ratios" },
                  [&](Context &c) { cmd_plan(c, plan); } };

  TraceArgs trace;
  s = app.add_subcommand("trace", "Detect t1/t2 in a UV trace and convert "
                                  "them to V1/V2");
  s->add_option("--input", trace.input, "Trace CSV");
  s->add_option("--output", trace.output, "Result CSV (default stdout)");
  s->add_flag("--synth", trace.synth,
              "Synthesize a Gaussian trace instead of reading one");
  s->add_option("--write-trace", trace.write_trace,
                "Save the synthesized trace here");
  s->add_option("--center", trace.center, "Synthetic peak center, min");
  s->add_option("--height", trace.height, "Synthetic peak height");
  s->add_option("--width", trace.width, "Synthetic peak sigma, min");
  s->add_option("--baseline", trace.baseline, "Synthetic baseline level");
  s->add_option("--noise", trace.noise, "Synthetic noise sigma");
  s->add_option("--period", trace.period, "Synthetic sample period, s");
  s->add_option("--samples", trace.samples, "Synthetic sample count");
  s->add_option("--seed", trace.seed, "Synthetic noise seed");
  s->add_option("--flow", trace.flow,
                "Flow rate in mL/min; overrides the trace header");
  s->add_option("--k-sigma", trace.k_sigma, "Threshold in baseline sigmas");
  s->add_option("--consecutive", trace.consecutive,
                "Samples required above threshold");
  s->add_option("--min-excess", trace.min_excess,
                "Minimum threshold above baseline");
  commands[s] = { {}, [&](Context &c) { cmd_trace(c, trace); } };

  app.failure_message(CLI::FailureMessage::help);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  CLI::App *sub = app.get_subcommands().front();
  try {
    Context ctx { out, nullptr, {}, {}, {} };
    if (!config_path.empty()) {
      merge_config(app, *sub, config_path);
      ctx.config_files.push_back(config_path);
    }
    ctx.log = make_logger(err, log_level);
    for (const std::string &name: commands[sub].required)
      if (sub->get_option(name)->count() == 0)
        throw Error(ErrorCode::kInvalidArgument,
                    sub->get_name() + ": missing required option " + name);

    ctx.log->info("ccpred {}", sub->get_name());
    for (const CLI::App *scope: { static_cast<const CLI::App *>(&app),
                                  static_cast<const CLI::App *>(sub) }) {
      for (const CLI::Option *opt: scope->get_options()) {
        const std::string key = option_key(opt);
        if (key == "help")
          continue;
        const std::string value = resolved_value(opt);
        ctx.config[key] = value;
        if (opt->count() > 0)
          ctx.explicit_options.push_back(key);
        ctx.log->info("config {} = {}", key, value);
      }
    }
    commands[sub].action(ctx);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    return fail(err, std::string("UsageError: ") + e.what(), kExitValidation);
  } catch (const Error &e) {
    return fail(err, e.what(),
                is_validation_error(e.code()) ? kExitValidation
                                              : kExitInternal);
  } catch (const std::exception &e) {
    return fail(err, std::string("InternalError: ") + e.what(),
                kExitInternal);
  }
}

}  // namespace ccpred::cli
