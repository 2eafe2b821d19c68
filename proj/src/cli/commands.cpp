//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "commands.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccpred/chemfeat/overrides.h"
#include "ccpred/cli/cli.h"
#include "ccpred/cli/manifest.h"
#include "ccpred/core/error.h"
#include "ccpred/core/text.h"
#include "ccpred/dataio/evaluate.h"
#include "ccpred/dataio/examples.h"
#include "ccpred/dataio/metrics.h"
#include "ccpred/dataio/records.h"
#include "ccpred/dataio/splits.h"
#include "ccpred/graphrep/codebook.h"
#include "ccpred/models/checkpoint.h"
#include "ccpred/models/featurizer.h"
#include "ccpred/molparse/smiles.h"
#include "ccpred/planner/elution.h"
#include "ccpred/planner/separation.h"
#include "ccpred/planner/trace.h"

namespace ccpred::cli {

namespace {

namespace fs = std::filesystem;

// Error::what() minus the "Code: " prefix.
std::string message_of(const Error &e) {
  const std::string what = e.what();
  const std::size_t skip = e.code_name().size() + 2;
  return what.size() >= skip ? what.substr(skip) : what;
}

void check_not_input(const std::string &output,
                     const std::vector<std::string> &inputs) {
  if (output.empty())
    return;
  const fs::path out = fs::weakly_canonical(output);
  for (const std::string &in: inputs)
    if (!in.empty() && fs::weakly_canonical(in) == out)
      throw Error(ErrorCode::kInvalidArgument,
                  "output '" + output + "' would overwrite input '" + in
                    + "'");
}

// Empty path means the result stream.
void emit(Context &ctx, const std::string &path, const std::string &text) {
  if (path.empty()) {
    ctx.out << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  os << text;
  if (!os)
    throw Error(ErrorCode::kIoError, "write failed for '" + path + "'");
  ctx.log->info("wrote {}", path);
}

void manifest(Context &ctx, const std::string &subcommand,
              std::vector<std::string> inputs,
              std::vector<std::string> outputs) {
  std::erase(inputs, std::string());
  std::erase(outputs, std::string());
  if (outputs.empty())
    return;
  inputs.insert(inputs.end(), ctx.config_files.begin(),
                ctx.config_files.end());
  const std::string path
    = write_manifest({ subcommand, ctx.config, inputs, outputs });
  ctx.log->info("manifest {}", path);
}

std::vector<std::string> gather_smiles(const std::vector<std::string> &given,
                                       const std::string &input) {
  std::vector<std::string> out = given;
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in)
      throw Error(ErrorCode::kIoError, "cannot open '" + input + "'");
    for (std::string &s: mol::read_smiles_lines(in))
      out.push_back(std::move(s));
  }
  if (out.empty())
    throw Error(ErrorCode::kInvalidArgument, "give --smiles or --input");
  return out;
}

model::Featurizer make_featurizer(const std::string &overrides) {
  if (overrides.empty())
    return model::Featurizer();
  return model::Featurizer(chem::load_overrides(overrides));
}

std::vector<data::ExperimentRecord> load_data(Context &ctx,
                                              const std::string &path) {
  data::LoadResult r = data::load_records(path);
  for (const data::Rejection &rej: r.rejected)
    ctx.log->warn("{} line {}: {}", path, rej.line, rej.reason);
  ctx.log->info("{}: {} records, {} invalid, {} rejected", path,
                r.records.size(), r.invalid, r.rejected.size());
  if (r.records.empty())
    throw Error(ErrorCode::kEmptyDataset,
                "no valid records in '" + path + "'");
  return std::move(r.records);
}

std::array<double, 3> split_props(const std::vector<double> &v) {
  if (v.size() != 3)
    throw Error(ErrorCode::kBadProportions,
                "--split needs three proportions");
  return { v[0], v[1], v[2] };
}

void write_metrics(std::ostream &os, const data::Metrics &m,
                   const std::array<double, 2> &coverage) {
  os << "target,n,r2,mae,coverage\n";
  for (std::size_t t = 0; t < 2; ++t)
    os << (t == 0 ? "V1" : "V2") << ',' << m.n << ','
       << format_double(m.r2[t]) << ',' << format_double(m.mae[t]) << ','
       << format_double(coverage[t]) << '\n';
}

model::EpochCallback epoch_logger(Context &ctx) {
  return [&ctx](const model::EpochLog &e) {
    ctx.log->debug("epoch {} lr {} train {} val {}", e.epoch,
                   format_double(e.lr), format_double(e.train_loss),
                   format_double(e.val_loss));
  };
}

void log_training(Context &ctx, const model::TrainMetadata &m) {
  ctx.log->info("epochs {}, best epoch {}, best loss {}", m.epochs_run,
                m.best_epoch, format_double(m.best_val_loss));
}

// Metrics on the test split, or on validation when there is no test split.
void report_qgeognn(Context &ctx, const model::QGeoGNN &model,
                    const std::vector<model::Example> &val,
                    const std::vector<model::Example> &test) {
  const auto &held = test.empty() ? val : test;
  if (held.empty()) {
    ctx.log->warn("no held-out split; no metrics reported");
    return;
  }
  ctx.log->info("metrics on the {} split", test.empty() ? "validation"
                                                        : "test");
  const data::Evaluation ev = data::evaluate_model(model, held);
  write_metrics(ctx.out, ev.metrics, ev.coverage);
}

const char *kPredictionHeader
  = "v1_q10,v1_q50,v1_q90,v2_q10,v2_q50,v2_q90";

void write_quantiles(std::ostream &os, const model::QuantilePrediction &p) {
  for (const model::QuantileTriple *q: { &p.v1, &p.v2 })
    os << ',' << format_double(q->q10) << ',' << format_double(q->q50) << ','
       << format_double(q->q90);
}

graph::ExperimentalFeatures condition_features(const ConditionArgs &c,
                                               graph::ColumnSpec column,
                                               const graph::EluentRatio &r) {
  return graph::make_experimental_features(
    column, r, c.sample_mass, graph::parse_loading_solvent(c.loading),
    c.loading_volume);
}

}  // namespace

void cmd_parse(Context &ctx, const ParseArgs &args) {
  const std::vector<std::string> all = gather_smiles(args.smiles, args.input);
  check_not_input(args.output, { args.input });
  std::ostringstream os;
  for (const std::string &s: all) {
    mol::MolGraph m;
    try {
      m = mol::parse_smiles(s);
    } catch (const Error &e) {
      throw Error(e.code(), "'" + s + "': " + message_of(e));
    }
    os << "smiles " << s << '\n';
    mol::dump_molecule(os, m);
    for (const std::string &w: m.warnings())
      os << "warning " << w << '\n';
  }
  emit(ctx, args.output, os.str());
  manifest(ctx, "parse", { args.input }, { args.output });
}

void cmd_featurize(Context &ctx, const FeaturizeArgs &args) {
  check_not_input(args.output, { args.input, args.overrides });
  std::ostringstream os;
  if (args.codebook) {
    graph::write_codebook(os);
    os << '\n';
    graph::write_solvent_table(os);
    os << '\n';
    graph::write_column_table(os);
  } else {
    const std::vector<std::string> all
      = gather_smiles(args.smiles, args.input);
    model::Featurizer featurizer = make_featurizer(args.overrides);
    // Same layout as the override file, so the output can be edited and
    // fed back through --overrides.
    os << "smiles";
    for (std::string_view name: chem::descriptor_names())
      os << ',' << name;
    os << ",fingerprint\n";
    for (const std::string &s: all) {
      const model::MoleculeFeatures &f = featurizer.molecule(s);
      os << s;
      for (double v: f.descriptors.values)
        os << ',' << format_double(v);
      os << ',' << f.fingerprint.to_bitstring() << '\n';
    }
  }
  emit(ctx, args.output, os.str());
  manifest(ctx, "featurize", { args.input, args.overrides }, { args.output });
}

void cmd_synth(Context &ctx, const SynthArgs &args) {
  data::SynthOptions opt = args.synth;
  opt.columns.clear();
  for (const std::string &c: args.columns)
    opt.columns.push_back(graph::parse_column_spec(c));
  const data::SynthDataset data = data::synth_dataset(opt);
  data::save_records(args.output, data.records);
  ctx.log->info("wrote {} records to {}", data.records.size(), args.output);
  manifest(ctx, "synth", {}, { args.output });
}

void cmd_train(Context &ctx, TrainArgs args) {
  const std::string output = resolve_checkpoint_path(args.output);
  check_not_input(output, { args.data, args.overrides });
  const auto records = load_data(ctx, args.data);
  const data::DatasetSplit split = data::split_random(
    records.size(), split_props(args.split), args.split_seed);
  ctx.log->info("split train {} validation {} test {}", split.train.size(),
                split.validation.size(), split.test.size());
  model::Featurizer featurizer = make_featurizer(args.overrides);

  if (args.model == "qgeognn") {
    const auto examples = data::to_examples(records, featurizer);
    const auto train = data::select(examples, split.train);
    const auto val = data::select(examples, split.validation);
    const auto test = data::select(examples, split.test);
    const model::QGeoGNN m
      = model::train_qgeognn(args.config, train, val, epoch_logger(ctx));
    log_training(ctx, m.metadata());
    model::save_checkpoint(output, m);
    ctx.log->info("wrote {}", output);
    report_qgeognn(ctx, m, val, test);
  } else if (args.model == "baseline") {
    // Shared flags reach the baseline only when set; its defaults differ.
    model::BaselineMLPConfig &b = args.baseline;
    b.seed = args.config.seed;
    if (ctx.given("epochs"))
      b.max_epochs = args.config.max_epochs;
    if (ctx.given("lr"))
      b.lr = args.config.lr;
    if (ctx.given("batch-size"))
      b.batch_size = args.config.batch_size;
    if (ctx.given("patience"))
      b.early_stop_patience = args.config.early_stop_patience;
    const data::BaselineTable table
      = data::to_baseline_table(records, featurizer);
    const model::BaselineMLP m = model::baseline_train(
      data::select(table.rows, split.train),
      data::select(table.targets, split.train),
      data::select(table.rows, split.validation),
      data::select(table.targets, split.validation), b);
    model::save_baseline(output, m);
    ctx.log->info("wrote {}", output);
    const data::IndexList &held
      = split.test.empty() ? split.validation : split.test;
    if (!held.empty()) {
      const auto pred = m.predict(data::select(table.rows, held));
      std::vector<double> p1, p2, t1, t2;
      for (std::size_t i = 0; i < held.size(); ++i) {
        p1.push_back(pred[i][0]);
        p2.push_back(pred[i][1]);
        t1.push_back(table.targets[held[i]][0]);
        t2.push_back(table.targets[held[i]][1]);
      }
      write_metrics(ctx.out, data::compute_metrics(p1, t1, p2, t2),
                    { std::nan(""), std::nan("") });
    }
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown model '" + args.model + "'");
  }
  manifest(ctx, "train", { args.data, args.overrides }, { output });
}

void cmd_transfer(Context &ctx, TransferArgs args) {
  const std::string base_path = resolve_checkpoint_path(args.base);
  const std::string output = resolve_checkpoint_path(args.output);
  check_not_input(output, { base_path, args.data, args.overrides });
  if (args.head == "least_squares")
    args.config.head_init = model::HeadInit::kLeastSquares;
  else if (args.head == "random")
    args.config.head_init = model::HeadInit::kRandom;
  else
    throw Error(ErrorCode::kInvalidArgument,
                "unknown head init '" + args.head + "'");
  args.config.parent = fs::path(base_path).filename().string();

  const model::QGeoGNN base = model::load_checkpoint(base_path);
  const auto records = load_data(ctx, args.data);
  const data::DatasetSplit split = data::split_random(
    records.size(), split_props(args.split), args.split_seed);
  model::Featurizer featurizer = make_featurizer(args.overrides);
  const auto examples = data::to_examples(records, featurizer);
  const auto train = data::select(examples, split.train);
  const auto val = data::select(examples, split.validation);
  const auto test = data::select(examples, split.test);
  const model::QGeoGNN m
    = model::transfer(base, args.config, train, val, epoch_logger(ctx));
  log_training(ctx, m.metadata());
  model::save_checkpoint(output, m);
  ctx.log->info("wrote {}", output);
  report_qgeognn(ctx, m, val, test);
  manifest(ctx, "transfer", { base_path, args.data, args.overrides },
           { output });
}

void cmd_eval(Context &ctx, const EvalArgs &args) {
  const std::string ckpt = resolve_checkpoint_path(args.checkpoint);
  check_not_input(args.predictions, { ckpt, args.data, args.overrides });
  const auto records = load_data(ctx, args.data);
  model::Featurizer featurizer = make_featurizer(args.overrides);
  std::ostringstream pred_os;

  if (model::checkpoint_kind(ckpt) == "baseline") {
    const model::BaselineMLP m = model::load_baseline(ckpt);
    const data::BaselineTable table
      = data::to_baseline_table(records, featurizer);
    const auto pred = m.predict(table.rows);
    std::vector<double> p1, p2, t1, t2;
    pred_os << "smiles,v1_obs,v2_obs,v1_pred,v2_pred\n";
    for (std::size_t i = 0; i < pred.size(); ++i) {
      p1.push_back(pred[i][0]);
      p2.push_back(pred[i][1]);
      t1.push_back(table.targets[i][0]);
      t2.push_back(table.targets[i][1]);
      pred_os << records[i].smiles << ',' << format_double(t1.back()) << ','
              << format_double(t2.back()) << ',' << format_double(p1.back())
              << ',' << format_double(p2.back()) << '\n';
    }
    write_metrics(ctx.out, data::compute_metrics(p1, t1, p2, t2),
                  { std::nan(""), std::nan("") });
  } else {
    const model::QGeoGNN m = model::load_checkpoint(ckpt);
    const auto examples = data::to_examples(records, featurizer);
    const data::Evaluation ev = data::evaluate_model(m, examples);
    write_metrics(ctx.out, ev.metrics, ev.coverage);
    pred_os << "smiles,v1_obs,v2_obs," << kPredictionHeader << '\n';
    for (std::size_t i = 0; i < examples.size(); ++i) {
      pred_os << records[i].smiles << ',' << format_double(examples[i].v1)
              << ',' << format_double(examples[i].v2);
      write_quantiles(pred_os, ev.predictions[i]);
      pred_os << '\n';
    }
  }
  if (!args.predictions.empty()) {
    emit(ctx, args.predictions, pred_os.str());
    manifest(ctx, "eval", { ckpt, args.data, args.overrides },
             { args.predictions });
  }
}

void cmd_sweep(Context &ctx, SweepArgs args) {
  check_not_input(args.output, { args.data, args.overrides });
  data::SweepKind kind;
  if (args.kind == data::to_string(data::SweepKind::kTrainProportion))
    kind = data::SweepKind::kTrainProportion;
  else if (args.kind == data::to_string(data::SweepKind::kNoiseRatio))
    kind = data::SweepKind::kNoiseRatio;
  else
    throw Error(ErrorCode::kInvalidArgument,
                "unknown sweep kind '" + args.kind + "'");
  if (args.grid.empty())
    args.grid = kind == data::SweepKind::kTrainProportion
                  ? data::kProportionGrid
                  : data::kNoiseGrid;
  args.options.split = split_props(args.split);

  const auto records = load_data(ctx, args.data);
  model::Featurizer featurizer = make_featurizer(args.overrides);
  const auto examples = data::to_examples(records, featurizer);
  auto on_point = [&](const data::SweepPoint &p) {
    ctx.log->info("{} {}: train {} r2 {} / {}", args.kind,
                  format_double(p.value), p.train_size,
                  format_double(p.metrics.r2[0]),
                  format_double(p.metrics.r2[1]));
  };
  const data::SweepResult result
    = kind == data::SweepKind::kTrainProportion
        ? data::sweep_train_proportion(examples, args.grid, args.options,
                                         on_point)
        : data::sweep_noise(examples, args.grid, args.options, on_point);
  ctx.log->info("adjacent inversions: {}", data::count_inversions(result));
  std::ostringstream os;
  data::write_sweep_table(os, result);
  emit(ctx, args.output, os.str());
  manifest(ctx, "sweep", { args.data, args.overrides }, { args.output });
}

void cmd_predict(Context &ctx, const PredictArgs &args) {
  const std::string ckpt = resolve_checkpoint_path(args.checkpoint);
  check_not_input(args.output,
                  { ckpt, args.data, args.input, args.overrides });
  const model::QGeoGNN m = model::load_checkpoint(ckpt);
  model::Featurizer featurizer = make_featurizer(args.overrides);

  struct Query {
    std::string smiles;
    graph::ColumnSpec column;
    graph::EluentRatio ratio;
    graph::ExperimentalFeatures features;
  };
  std::vector<Query> queries;
  if (!args.data.empty()) {
    if (!args.smiles.empty() || !args.input.empty())
      throw Error(ErrorCode::kInvalidArgument,
                  "--data excludes --smiles and --input");
    for (const data::ExperimentRecord &r: load_data(ctx, args.data))
      queries.push_back({ r.smiles, r.column, r.ratio, r.features() });
  } else {
    const graph::ColumnSpec column = graph::parse_column_spec(args.column);
    const graph::EluentRatio ratio = graph::EluentRatio::parse(args.ratio);
    const graph::ExperimentalFeatures exp
      = condition_features(args.condition, column, ratio);
    for (const std::string &s: gather_smiles(args.smiles, args.input))
      queries.push_back({ s, column, ratio, exp });
  }

  std::vector<graph::GeoGraphPair> pairs;
  pairs.reserve(queries.size());
  for (const Query &q: queries)
    pairs.push_back(featurizer.pair(q.smiles, q.features));
  std::vector<const graph::GeoGraphPair *> ptrs;
  for (const auto &p: pairs)
    ptrs.push_back(&p);
  const auto pred = m.predict(ptrs);

  std::ostringstream os;
  os << "smiles,column_spec,pe_ea_ratio," << kPredictionHeader << '\n';
  for (std::size_t i = 0; i < queries.size(); ++i) {
    os << queries[i].smiles << ',' << graph::to_string(queries[i].column)
       << ',' << queries[i].ratio.to_string();
    write_quantiles(os, pred[i]);
    os << '\n';
  }
  emit(ctx, args.output, os.str());
  manifest(ctx, "predict", { ckpt, args.data, args.input, args.overrides },
           { args.output });
}

void cmd_plan(Context &ctx, const PlanArgs &args) {
  const std::string ckpt = resolve_checkpoint_path(args.checkpoint);
  check_not_input(args.output, { ckpt, args.overrides });
  const model::QGeoGNN m = model::load_checkpoint(ckpt);
  model::Featurizer featurizer = make_featurizer(args.overrides);
  std::vector<plan::ConditionCandidate> candidates;
  for (const std::string &c: args.columns) {
    const graph::ColumnSpec column = graph::parse_column_spec(c);
    for (const std::string &r: args.ratios)
      candidates.push_back({ column, graph::EluentRatio::parse(r),
                             args.condition.sample_mass,
                             graph::parse_loading_solvent(
                               args.condition.loading),
                             args.condition.loading_volume });
  }
  const auto ranked
    = plan::rank_conditions(args.a, args.b, candidates, m, featurizer);

  std::ostringstream os;
  os << "rank,column_spec,pe_ea_ratio,sp,first_eluter,degenerate";
  for (const char *who: { "a", "b" })
    for (const char *v: { "v1", "v2" })
      for (const char *q: { "q10", "q50", "q90" })
        os << ',' << who << '_' << v << '_' << q;
  os << '\n';
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const plan::RankedCondition &r = ranked[i];
    os << i + 1 << ',' << graph::to_string(r.condition.column) << ','
       << r.condition.ratio.to_string() << ','
       << format_double(r.assessment.sp) << ','
       << r.assessment.first_eluter << ',' << (r.degenerate ? 1 : 0);
    write_quantiles(os, { r.window_a.v1, r.window_a.v2 });
    write_quantiles(os, { r.window_b.v1, r.window_b.v2 });
    os << '\n';
  }
  emit(ctx, args.output, os.str());
  manifest(ctx, "plan", { ckpt, args.overrides }, { args.output });
}

void cmd_trace(Context &ctx, const TraceArgs &args) {
  plan::TraceSignal trace;
  if (args.synth) {
    if (!args.input.empty())
      throw Error(ErrorCode::kInvalidArgument,
                  "--synth excludes --input");
    trace = plan::synth_trace({ { args.center, args.height, args.width } },
                              args.baseline, args.noise, args.period,
                              args.samples, args.seed, args.flow);
  } else {
    if (args.input.empty())
      throw Error(ErrorCode::kInvalidArgument, "give --input or --synth");
    trace = plan::load_trace(args.input);
    if (ctx.given("flow"))
      trace.flow_rate = args.flow;
  }
  check_not_input(args.output, { args.input });
  check_not_input(args.write_trace, { args.input });
  if (!args.write_trace.empty()) {
    std::ostringstream ts;
    plan::write_trace(ts, trace);
    emit(ctx, args.write_trace, ts.str());
  }

  plan::DetectOptions opt;
  opt.k_sigma = args.k_sigma;
  opt.consecutive = args.consecutive;
  opt.min_excess = args.min_excess;
  const plan::PeakBounds b = plan::detect_peak_bounds(trace, opt);
  double v1 = plan::kInvalidTime, v2 = plan::kInvalidTime;
  if (b.valid) {
    const plan::ElutionVolumes v
      = plan::volumes_from_times(trace.flow_rate, b.t1, b.t2);
    v1 = v.v1;
    v2 = v.v2;
  } else {
    ctx.log->warn("no peak found; reporting the -1 sentinel");
  }
  std::ostringstream os;
  os << "t1,t2,v1,v2,valid\n"
     << format_double(b.t1) << ',' << format_double(b.t2) << ','
     << format_double(v1) << ',' << format_double(v2) << ','
     << (b.valid ? 1 : 0) << '\n';
  emit(ctx, args.output, os.str());
  manifest(ctx, "trace", { args.input },
           { args.output, args.write_trace });
}

}  // namespace ccpred::cli
