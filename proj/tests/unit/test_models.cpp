//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ccpred/core/error.h"
#include "ccpred/core/rng.h"
#include "ccpred/dataio/examples.h"
#include "ccpred/dataio/metrics.h"
#include "ccpred/dataio/synth.h"
#include "ccpred/models/baseline.h"
#include "ccpred/models/checkpoint.h"
#include "ccpred/models/featurizer.h"
#include "ccpred/models/qgeognn.h"
#include "ccpred/models/training.h"
#include "gradcheck.h"

using namespace ccpred;
using namespace ccpred::model;

namespace {

ErrorCode code_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected ccpred::Error");
  return ErrorCode::kInvalidArgument;
}

QGeoGNNConfig small_config(std::uint64_t seed) {
  QGeoGNNConfig c;
  c.num_layers = 2;
  c.embed_dim = 8;
  c.batch_size = 16;
  c.max_epochs = 20;
  c.lr = 3e-3;
  c.early_stop_patience = 5;
  c.seed = seed;
  return c;
}

Normalization identity_norm() {
  return { Standardizer::identity(2), Standardizer::identity(16),
           Standardizer::identity(graph::kConditionWidth) };
}

std::vector<Example> synth_examples(std::size_t n, std::uint64_t seed,
                                    graph::ColumnSpec column =
                                      graph::ColumnSpec::k4g) {
  static Featurizer featurizer;
  data::SynthOptions opt;
  opt.n = n;
  opt.seed = seed;
  opt.columns = { column };
  return data::to_examples(data::synth_dataset(opt).records, featurizer);
}

graph::GeoGraphPair pair_for(const std::string &smiles,
                             const graph::EluentRatio &ratio) {
  static Featurizer featurizer;
  return featurizer.pair(
    smiles, graph::make_experimental_features(
              graph::ColumnSpec::k4g, ratio, 50.0,
              graph::LoadingSolvent::kDichloromethane, 1.0));
}

// Renumber GraphG atoms; atom j of the result is atom perm[j] of the input.
graph::GeoGraphPair relabel_atoms(const graph::GeoGraphPair &p,
                                  const std::vector<std::size_t> &perm) {
  graph::GeoGraphPair out = p;
  std::vector<int> inv(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) {
    out.g.node_features[j] = p.g.node_features[perm[j]];
    inv[perm[j]] = static_cast<int>(j);
  }
  for (auto &[u, v]: out.g.edge_index) {
    u = inv[u];
    v = inv[v];
  }
  return out;
}

bool all_equal(const nn::ParameterSet &a, const nn::ParameterSet &b) {
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || !(a[i].value == b[i].value))
      return false;
  }
  return true;
}

std::string checkpoint_bytes(const QGeoGNN &m) {
  std::ostringstream os;
  write_checkpoint(os, m);
  return os.str();
}

QGeoGNN from_bytes(const std::string &bytes) {
  std::istringstream is(bytes);
  return read_checkpoint(is);
}

std::string temp_path(const std::string &name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void check_ordered(const QuantilePrediction &p) {
  for (const QuantileTriple &q: { p.v1, p.v2 }) {
    CHECK(q.q10 >= 0.0);
    CHECK(q.q10 <= q.q50);
    CHECK(q.q50 <= q.q90);
  }
  CHECK(p.v2.q10 >= p.v1.q10);
  CHECK(p.v2.q50 >= p.v1.q50);
  CHECK(p.v2.q90 >= p.v1.q90);
}

}  // namespace

TEST_CASE("config validation") {
  QGeoGNNConfig c;
  CHECK_NOTHROW(c.validate());
  c.quantiles = { 0.1, 0.5, 1.0 };
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::kTauOutOfRange);
  c.quantiles = { 0.5, 0.1, 0.9 };
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::kInvalidArgument);
  c = QGeoGNNConfig {};
  c.embed_dim = 0;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::kInvalidArgument);
  c = QGeoGNNConfig {};
  c.lr_gamma = 1.5;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("default hyperparameters") {
  QGeoGNNConfig c;
  CHECK(c.num_layers == 5);
  CHECK(c.embed_dim == 128);
  CHECK(c.batch_size == 2048);
  CHECK(c.max_epochs == 1500);
  CHECK(c.lr == 1e-3);
  CHECK(c.quantiles == std::vector<double> { 0.1, 0.5, 0.9 });
  TransferConfig t;
  CHECK(t.lr == 1e-4);
  CHECK(t.final_lr == 1e-4);
  BaselineMLPConfig b;
  CHECK(b.hidden_layers == 3);
  CHECK(b.hidden_units == 50);
  CHECK(b.leaky_slope == 0.01);
  CHECK(b.max_epochs == 10000);
  CHECK(kBaselineWidth == 192);
}

TEST_CASE("quantile outputs stay ordered for random weights and inputs") {
  const auto &corpus = data::synth_corpus();
  const auto &ratios = data::synth_ratios();
  Rng rng(11);
  std::size_t checked = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    QGeoGNN m(small_config(s), identity_norm());
    const double gain = rng.uniform(0.5, 4.0);
    for (nn::Parameter &p: m.params()) {
      for (std::size_t i = 0; i < p.value.size(); ++i)
        p.value[i] *= gain;
    }
    m.set_interval_scale({ rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 2.0) });
    std::vector<graph::GeoGraphPair> pairs;
    for (int i = 0; i < 500; ++i) {
      graph::GeoGraphPair p = pair_for(corpus[rng.index(corpus.size())],
                                       ratios[rng.index(ratios.size())]);
      for (double &c: p.g.conditions)
        c = rng.normal(0.0, 3.0);
      pairs.push_back(std::move(p));
    }
    std::vector<const graph::GeoGraphPair *> ptrs;
    for (const auto &p: pairs)
      ptrs.push_back(&p);
    for (const QuantilePrediction &q: m.predict(ptrs)) {
      check_ordered(q);
      ++checked;
    }
  }
  CHECK(checked == 10000);
}

TEST_CASE("predictions are invariant under atom relabeling") {
  QGeoGNN m(small_config(3), identity_norm());
  Rng rng(5);
  for (const std::string &smi: data::synth_corpus()) {
    graph::GeoGraphPair p = pair_for(smi, graph::EluentRatio(5, 1));
    std::vector<std::size_t> perm = rng.permutation(p.g.num_nodes());
    QuantilePrediction a = m.predict(p);
    QuantilePrediction b = m.predict(relabel_atoms(p, perm));
    for (auto [x, y]: { std::pair { a.v1.q10, b.v1.q10 },
                        { a.v1.q50, b.v1.q50 }, { a.v1.q90, b.v1.q90 },
                        { a.v2.q10, b.v2.q10 }, { a.v2.q50, b.v2.q50 },
                        { a.v2.q90, b.v2.q90 } })
      CHECK(std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(x)));
  }
}

TEST_CASE("relabeled SMILES give the same prediction") {
  QGeoGNN m(small_config(4), identity_norm());
  // Same molecules written from a different starting atom.
  CHECK(m.predict(pair_for("CCOc1ccccc1", { 5, 1 }))
        == m.predict(pair_for("c1ccc(OCC)cc1", { 5, 1 })));
  CHECK(m.predict(pair_for("OC(=O)c1ccccc1", { 2, 1 }))
        == m.predict(pair_for("c1ccccc1C(O)=O", { 2, 1 })));
}

TEST_CASE("conditions change the prediction") {
  QGeoGNN m(small_config(6), identity_norm());
  QuantilePrediction a = m.predict(pair_for("CCOc1ccccc1", { 50, 1 }));
  QuantilePrediction b = m.predict(pair_for("CCOc1ccccc1", { 1, 1 }));
  CHECK(a != b);
}

TEST_CASE("batched and single predictions agree") {
  QGeoGNNConfig c = small_config(8);
  c.micro_batch = 3;
  QGeoGNN m(c, identity_norm());
  std::vector<graph::GeoGraphPair> pairs;
  for (const std::string &smi: data::synth_corpus())
    pairs.push_back(pair_for(smi, { 10, 1 }));
  pairs.push_back(pairs.front());  // a repeated molecule inside one batch
  std::vector<const graph::GeoGraphPair *> ptrs;
  for (const auto &p: pairs)
    ptrs.push_back(&p);
  std::vector<QuantilePrediction> batch = m.predict(ptrs);
  REQUIRE(batch.size() == pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    QuantilePrediction one = m.predict(pairs[i]);
    CHECK(std::abs(one.v1.q50 - batch[i].v1.q50) <= 1e-9);
    CHECK(std::abs(one.v2.q90 - batch[i].v2.q90) <= 1e-9);
  }
}

TEST_CASE("packing rejects bad inputs") {
  QGeoGNN m(small_config(1), identity_norm());
  graph::GeoGraphPair p = pair_for("CCO", { 5, 1 });
  graph::GeoGraphPair other = p;
  other.codebook_version = "ccpred-codebook-0";
  CHECK(code_of([&] { (void)m.predict(other); })
        == ErrorCode::kCodebookMismatch);
  graph::GeoGraphPair bare = p;
  bare.g.edge_index.clear();
  bare.g.edge_bond_codes.clear();
  bare.h = graph::GraphH {};
  bare.bond_map.clear();
  CHECK(code_of([&] { (void)m.predict(bare); })
        == ErrorCode::kSingleAtomMolecule);
  Normalization bad = identity_norm();
  bad.descriptors = Standardizer::identity(3);
  CHECK(code_of([&] { (void)pack_batch({ &p }, bad); })
        == ErrorCode::kWidthMismatch);
}

TEST_CASE("analytic gradients match finite differences for the full model") {
  QGeoGNNConfig c = small_config(2);
  c.embed_dim = 6;
  QGeoGNN m(c, fit_normalization(synth_examples(50, 1)));
  // Zero-initialized biases put ReLU inputs exactly on the kink.
  Rng jitter(102);
  for (nn::Parameter &p: m.params()) {
    for (std::size_t i = 0; i < p.value.size(); ++i)
      p.value[i] += jitter.normal(0.0, 0.1);
  }
  graph::GeoGraphPair pair = pair_for("CC(=O)OC", { 5, 1 });
  REQUIRE(pair.g.num_nodes() == 5);
  PackedBatch batch = pack_batch({ &pair }, m.normalization());
  nn::Tensor target(1, 6);
  {
    nn::Tape t(false);
    const nn::Tensor out = m.infer(t, batch).value();
    const double offset[6] = { -0.5, 0.1, 0.5, -0.25, 0.35, 1.0 };
    for (std::size_t j = 0; j < 6; ++j)
      target[j] = out[j] + offset[j];
  }
  // With a loss near 0.3, central differences at step 1e-5 resolve about
  // 1e-10 in the gradient; the floor keeps the comparison above that.
  testing::GradCheckResult r = testing::gradient_check(
    m.params(),
    [&](nn::Tape &t) { return nn::mse_loss(m.forward(t, batch), target); },
    1e-5, 1e-5);
  INFO("worst " << r.worst);
  CHECK(r.checked == m.params().num_values());
  CHECK(r.max_rel_error < 1e-4);
}

TEST_CASE("training drives a single example to its target") {
  std::vector<Example> one = synth_examples(1, 17);
  QGeoGNNConfig c = small_config(9);
  c.max_epochs = 400;
  c.lr = 1e-2;
  c.early_stop_patience = 400;
  double start = 0.0;
  double last = 0.0;
  QGeoGNN m = train_qgeognn(c, one, {}, [&](const EpochLog &log) {
    if (log.epoch == 0)
      start = log.train_loss;
    last = log.train_loss;
  });
  CHECK(last < 0.05 * start);
  QuantilePrediction p = m.predict(one[0].pair);
  CHECK(std::abs(p.v1.q50 - one[0].v1) <= 0.02 * one[0].v1);
  CHECK(std::abs(p.v2.q50 - one[0].v2) <= 0.02 * one[0].v2);
}

TEST_CASE("training is deterministic for a fixed seed") {
  std::vector<Example> train = synth_examples(40, 3);
  std::vector<Example> val = synth_examples(10, 4);
  QGeoGNN a = train_qgeognn(small_config(21), train, val);
  QGeoGNN b = train_qgeognn(small_config(21), train, val);
  CHECK(checkpoint_bytes(a) == checkpoint_bytes(b));
  QGeoGNN c = train_qgeognn(small_config(22), train, val);
  CHECK(checkpoint_bytes(a) != checkpoint_bytes(c));
}

TEST_CASE("early stopping keeps the best validation state") {
  std::vector<Example> train = synth_examples(40, 5);
  std::vector<Example> val = synth_examples(10, 6);
  QGeoGNNConfig c = small_config(13);
  c.lr = 3e-2;
  c.max_epochs = 60;
  c.early_stop_patience = 4;
  c.calibrate_intervals = false;
  std::vector<EpochLog> logs;
  QGeoGNN m = train_qgeognn(c, train, val,
                            [&](const EpochLog &l) { logs.push_back(l); });
  REQUIRE(!logs.empty());
  double best = m.metadata().best_val_loss;
  CHECK(evaluate_loss(m, val) == best);
  for (const EpochLog &l: logs)
    CHECK(best <= l.val_loss);
  CHECK(m.metadata().epochs_run == static_cast<int>(logs.size()));
  if (m.metadata().best_epoch >= 0) {
    CHECK(logs[m.metadata().best_epoch].val_loss == best);
    CHECK(m.metadata().epochs_run
          <= m.metadata().best_epoch + 1 + c.early_stop_patience);
  }
}

TEST_CASE("calibrated intervals cover the validation split") {
  std::vector<Example> train = synth_examples(60, 7);
  std::vector<Example> val = synth_examples(30, 8);
  QGeoGNN m = train_qgeognn(small_config(5), train, val);
  int in1 = 0;
  int in2 = 0;
  for (const Example &e: val) {
    QuantilePrediction p = m.predict(e.pair);
    in1 += p.v1.q10 <= e.v1 && e.v1 <= p.v1.q90;
    in2 += p.v2.q10 <= e.v2 && e.v2 <= p.v2.q90;
  }
  // ceil((n + 1) * 0.8) of 30 scores lie inside; the decode clamps only
  // widen V1 and can move at most the V2 lower bound.
  CHECK(in1 >= 25);
  CHECK(in2 >= 24);
}

TEST_CASE("transfer with zero epochs keeps every trunk weight") {
  std::vector<Example> base_train = synth_examples(40, 9);
  QGeoGNN base = train_qgeognn(small_config(30), base_train, {});
  std::vector<Example> target =
    synth_examples(12, 10, graph::ColumnSpec::k8g);
  TransferConfig tc;
  tc.max_epochs = 0;
  tc.seed = 2;
  tc.parent = "base.ckpt";
  QGeoGNN t = transfer(base, tc, target, {});
  const std::vector<std::string> head = QGeoGNN::output_layer_names();
  for (const nn::Parameter &p: base.params()) {
    bool is_head = std::find(head.begin(), head.end(), p.name) != head.end();
    if (is_head)
      CHECK_FALSE(t.params().at(p.name).value == p.value);
    else
      CHECK(t.params().at(p.name).value == p.value);
  }
  CHECK(t.metadata().parent == "base.ckpt");
  CHECK(t.config().lr == 1e-4);
  const auto &bn = base.normalization().conditions;
  const auto &tn = t.normalization().conditions;
  for (std::size_t k = 0; k < graph::kConditionWidth; ++k) {
    if (k >= 6 && k < 9)
      continue;
    CHECK(tn.mean[k] == bn.mean[k]);
    CHECK(tn.std[k] == bn.std[k]);
  }

  tc.head_init = HeadInit::kRandom;
  QGeoGNN r = transfer(base, tc, target, {});
  QGeoGNN fresh = base;
  fresh.reinit_output_layer(2);
  for (const std::string &name: head)
    CHECK(r.params().at(name).value == fresh.params().at(name).value);
}

TEST_CASE("least squares head beats a random head on its own data") {
  std::vector<Example> base_train = synth_examples(60, 11);
  QGeoGNN base = train_qgeognn(small_config(31), base_train, {});
  std::vector<Example> target =
    synth_examples(30, 12, graph::ColumnSpec::k8g);
  TransferConfig tc;
  tc.max_epochs = 0;
  QGeoGNN ls = transfer(base, tc, target, {});
  tc.head_init = HeadInit::kRandom;
  QGeoGNN rnd = transfer(base, tc, target, {});
  CHECK(evaluate_loss(ls, target) < evaluate_loss(rnd, target));
  tc.ridge = 0.0;
  CHECK(code_of([&] { (void)transfer(base, tc, target, {}); })
        == ErrorCode::kInvalidArgument);
}

TEST_CASE("transfer learning rate respects the floor") {
  QGeoGNN base(small_config(3), identity_norm());
  std::vector<Example> target = synth_examples(8, 13);
  TransferConfig tc;
  tc.lr = 1e-3;
  tc.lr_gamma = 0.5;
  tc.lr_step_size = 1;
  tc.max_epochs = 8;
  tc.early_stop_patience = 100;
  std::vector<double> lrs;
  (void)transfer(base, tc, target, {},
                 [&](const EpochLog &l) { lrs.push_back(l.lr); });
  REQUIRE(lrs.size() == 8);
  CHECK(lrs[0] == 1e-3);
  CHECK(lrs[1] == 5e-4);
  CHECK(lrs[3] == 1.25e-4);
  for (std::size_t e = 4; e < lrs.size(); ++e)
    CHECK(lrs[e] == 1e-4);
}

TEST_CASE("transfer propagates codebook mismatches") {
  QGeoGNN base(small_config(3), identity_norm());
  std::vector<Example> target = synth_examples(4, 14);
  target[1].pair.codebook_version = "ccpred-codebook-0";
  TransferConfig tc;
  tc.max_epochs = 1;
  CHECK(code_of([&] { (void)transfer(base, tc, target, {}); })
        == ErrorCode::kCodebookMismatch);
}

TEST_CASE("training rejects empty data") {
  CHECK(code_of([] { (void)train_qgeognn(small_config(1), {}, {}); })
        == ErrorCode::kEmptyDataset);
}

TEST_CASE("checkpoint round trip is bit exact") {
  std::vector<Example> train = synth_examples(30, 15);
  std::vector<Example> val = synth_examples(10, 16);
  QGeoGNN m = train_qgeognn(small_config(40), train, val);
  const std::string path = temp_path("ccpred_test_roundtrip.ckpt");
  save_checkpoint(path, m);
  QGeoGNN back = load_checkpoint(path);
  std::filesystem::remove(path);
  CHECK(back.config() == m.config());
  CHECK(back.normalization() == m.normalization());
  CHECK(back.metadata() == m.metadata());
  CHECK(back.interval_scale() == m.interval_scale());
  CHECK(all_equal(back.params(), m.params()));
  for (const Example &e: val)
    CHECK(back.predict(e.pair) == m.predict(e.pair));
  CHECK(checkpoint_bytes(back) == checkpoint_bytes(m));
}

TEST_CASE("damaged checkpoints are rejected") {
  QGeoGNN m(small_config(41), identity_norm());
  const std::string bytes = checkpoint_bytes(m);
  for (std::size_t cut: { std::size_t { 0 }, std::size_t { 5 },
                          std::size_t { 12 }, bytes.size() / 2,
                          bytes.size() - 1 }) {
    CAPTURE(cut);
    CHECK(code_of([&] { (void)from_bytes(bytes.substr(0, cut)); })
          == ErrorCode::kCorruptFile);
  }
  std::string flipped = bytes;
  flipped[bytes.size() - 20] ^= 0x10;
  CHECK(code_of([&] { (void)from_bytes(flipped); })
        == ErrorCode::kCorruptFile);
  std::string magic = bytes;
  magic[0] = 'X';
  CHECK(code_of([&] { (void)from_bytes(magic); }) == ErrorCode::kCorruptFile);
  CHECK(code_of([] { (void)load_checkpoint("/nonexistent/x.ckpt"); })
        == ErrorCode::kIoError);
}

TEST_CASE("checkpoints from another version are rejected") {
  QGeoGNN m(small_config(42), identity_norm());
  const std::string bytes = checkpoint_bytes(m);
  auto edited = [&](const std::string &from, const std::string &to) {
    std::string b = bytes;
    std::size_t at = b.find(from);
    REQUIRE(at != std::string::npos);
    b.replace(at, from.size(), to);
    return b;
  };
  CHECK(code_of([&] {
          (void)from_bytes(edited("ccpred-codebook-1", "ccpred-codebook-0"));
        })
        == ErrorCode::kVersionMismatch);
  CHECK(code_of([&] {
          (void)from_bytes(edited("\"format_version\":1",
                                  "\"format_version\":7"));
        })
        == ErrorCode::kVersionMismatch);
}

TEST_CASE("checkpoint kinds are distinguished") {
  QGeoGNN m(small_config(43), identity_norm());
  const std::string gnn = temp_path("ccpred_test_kind_gnn.ckpt");
  save_checkpoint(gnn, m);
  CHECK(checkpoint_kind(gnn) == "qgeognn");
  BaselineMLP b(BaselineMLPConfig {}, Standardizer::identity(kBaselineWidth),
                Standardizer::identity(2));
  const std::string mlp = temp_path("ccpred_test_kind_mlp.ckpt");
  save_baseline(mlp, b);
  CHECK(checkpoint_kind(mlp) == "baseline");
  CHECK(code_of([&] { (void)load_checkpoint(mlp); })
        == ErrorCode::kCorruptFile);
  BaselineMLP back = load_baseline(mlp);
  std::vector<BaselineRow> rows(3, BaselineRow(kBaselineWidth, 0.25));
  CHECK(back.predict(rows) == b.predict(rows));
  std::filesystem::remove(gnn);
  std::filesystem::remove(mlp);
}

namespace {

struct LinearTask {
  std::vector<BaselineRow> rows;
  std::vector<BaselineTarget> targets;
};

LinearTask linear_task(std::size_t n, std::uint64_t seed) {
  Rng w_rng(99);
  std::vector<double> w(kBaselineWidth);
  for (double &v: w)
    v = w_rng.normal(0.0, 0.3);
  Rng rng(seed);
  LinearTask t;
  for (std::size_t i = 0; i < n; ++i) {
    BaselineRow r(kBaselineWidth);
    double y = 20.0;
    for (std::size_t k = 0; k < kBaselineWidth; ++k) {
      r[k] = rng.normal();
      y += w[k] * r[k];
    }
    t.rows.push_back(std::move(r));
    t.targets.push_back({ y, 1.5 * y + 3.0 });
  }
  return t;
}

BaselineMLPConfig quick_baseline(std::uint64_t seed) {
  BaselineMLPConfig c;
  c.max_epochs = 3000;
  c.early_stop_patience = 50;
  c.batch_size = 32;
  c.seed = seed;
  return c;
}

data::Metrics score(const BaselineMLP &m, const LinearTask &t) {
  std::vector<double> p1, p2, y1, y2;
  std::vector<BaselineTarget> pred = m.predict(t.rows);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    p1.push_back(pred[i][0]);
    p2.push_back(pred[i][1]);
    y1.push_back(t.targets[i][0]);
    y2.push_back(t.targets[i][1]);
  }
  return data::compute_metrics(p1, y1, p2, y2);
}

}  // namespace

TEST_CASE("baseline learns a linear target") {
  LinearTask train = linear_task(800, 1);
  LinearTask val = linear_task(150, 2);
  LinearTask test = linear_task(200, 3);
  BaselineMLP m = baseline_train(train.rows, train.targets, val.rows,
                                 val.targets, quick_baseline(1));
  data::Metrics s = score(m, test);
  CHECK(s.r2[0] >= 0.95);
  CHECK(s.r2[1] >= 0.95);
}

TEST_CASE("baseline cannot learn shuffled labels") {
  LinearTask train = linear_task(800, 4);
  LinearTask val = linear_task(150, 5);
  LinearTask test = linear_task(200, 6);
  Rng rng(7);
  rng.shuffle(train.targets);
  rng.shuffle(val.targets);
  BaselineMLP m = baseline_train(train.rows, train.targets, val.rows,
                                 val.targets, quick_baseline(2));
  data::Metrics s = score(m, test);
  CHECK(s.r2[0] <= 0.2);
  CHECK(s.r2[1] <= 0.2);
}

TEST_CASE("baseline on a constant target has undefined r2") {
  LinearTask train = linear_task(100, 8);
  for (auto &t: train.targets)
    t = { 7.0, 9.0 };
  BaselineMLPConfig c = quick_baseline(3);
  c.max_epochs = 50;
  BaselineMLP m = baseline_train(train.rows, train.targets, {}, {}, c);
  data::Metrics s = score(m, train);
  CHECK(std::isnan(s.r2[0]));
  CHECK(std::isnan(s.r2[1]));
  CHECK_FALSE(s.r2_defined(0));
  for (const BaselineTarget &p: m.predict(train.rows)) {
    CHECK(std::abs(p[0] - 7.0) < 0.5);
    CHECK(std::abs(p[1] - 9.0) < 0.5);
  }
}

TEST_CASE("baseline rejects bad widths and configs") {
  BaselineMLP m(BaselineMLPConfig {}, Standardizer::identity(kBaselineWidth),
                Standardizer::identity(2));
  CHECK(code_of([&] { (void)m.predict({ BaselineRow(191, 0.0) }); })
        == ErrorCode::kWidthMismatch);
  BaselineMLPConfig c;
  c.hidden_units = 0;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] {
          (void)baseline_train({}, {}, {}, {}, BaselineMLPConfig {});
        })
        == ErrorCode::kEmptyDataset);
}

TEST_CASE("baseline layer shapes") {
  BaselineMLP m(BaselineMLPConfig {}, Standardizer::identity(kBaselineWidth),
                Standardizer::identity(2));
  CHECK(m.params().size() == 8);
  CHECK(m.params().at("fc0.w").value.rows() == kBaselineWidth);
  CHECK(m.params().at("fc0.w").value.cols() == 50);
  CHECK(m.params().at("fc3.w").value.cols() == 2);
}

TEST_CASE("baseline rows concatenate fingerprint, descriptors and core "
          "conditions") {
  Featurizer f;
  graph::ExperimentalFeatures exp = graph::make_experimental_features(
    graph::ColumnSpec::k25g, { 3, 1 }, 80.0, graph::LoadingSolvent::kNone,
    0.0);
  std::vector<double> row = f.baseline_row("CCO", exp);
  REQUIRE(row.size() == kBaselineWidth);
  const MoleculeFeatures &mf = f.molecule("CCO");
  for (std::size_t k = 0; k < chem::kNumDescriptors; ++k)
    CHECK(row[chem::kFingerprintBits + k] == mf.descriptors.values[k]);
  auto core = exp.core();
  for (std::size_t k = 0; k < core.size(); ++k)
    CHECK(row[chem::kFingerprintBits + chem::kNumDescriptors + k] == core[k]);
}

TEST_CASE("standardizer fit") {
  Standardizer s = Standardizer::fit({ { 1.0, 5.0 }, { 3.0, 5.0 } });
  CHECK(s.mean == std::vector<double> { 2.0, 5.0 });
  CHECK(s.std[0] == doctest::Approx(1.0));
  CHECK(s.std[1] == 1.0);  // constant column
  CHECK(s.inverse(0, s.forward(0, 7.5)) == doctest::Approx(7.5));
  CHECK(code_of([] { (void)Standardizer::fit({}); })
        == ErrorCode::kEmptyDataset);
}
