//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ccpred/chemfeat/descriptors.h"
#include "ccpred/chemfeat/fingerprint.h"
#include "ccpred/core/error.h"
#include "ccpred/core/rng.h"
#include "ccpred/dataio/examples.h"
#include "ccpred/dataio/metrics.h"
#include "ccpred/dataio/noise.h"
#include "ccpred/dataio/records.h"
#include "ccpred/dataio/similarity.h"
#include "ccpred/dataio/splits.h"
#include "ccpred/dataio/sweep.h"
#include "ccpred/dataio/synth.h"
#include "ccpred/molparse/smiles.h"

using namespace ccpred;
using namespace ccpred::data;

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

std::string with_header(const std::string &rows) {
  return std::string(kRecordHeader) + "\n" + rows;
}

LoadResult read_text(const std::string &text) {
  std::istringstream is(text);
  return read_records(is);
}

std::string error_text(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.what();
  }
  return {};
}

void check_partition(const std::vector<const IndexList *> &parts,
                     std::size_t n) {
  std::vector<int> seen(n, 0);
  for (const IndexList *p: parts) {
    for (std::size_t i: *p) {
      REQUIRE(i < n);
      ++seen[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    CHECK(seen[i] == 1);
}

}  // namespace

TEST_CASE("records derive volumes from times") {
  LoadResult r = read_text(with_header(
    "CCO,64-17-5,4g,10,20/1,0.98,0.789,50,DCM,1,2,5\n"));
  REQUIRE(r.records.size() == 1);
  const ExperimentRecord &rec = r.records[0];
  CHECK(rec.smiles == "CCO");
  CHECK(rec.cas == "64-17-5");
  CHECK(rec.column == graph::ColumnSpec::k4g);
  CHECK(rec.ratio == graph::EluentRatio(20, 1));
  CHECK(rec.density.value() == 0.789);
  CHECK(rec.loading_solvent == graph::LoadingSolvent::kDichloromethane);
  plan::ElutionVolumes v = rec.volumes();
  CHECK(v.v1 == 20.0);
  CHECK(v.v2 == 50.0);
}

TEST_CASE("sentinel rows are counted and excluded") {
  LoadResult r = read_text(with_header(
    "CCO,,4g,10,20/1,1,,50,0,1,-1,-1\n"
    "CCC,,8g,10,5/1,1,,50,0,1,1,3\n"));
  CHECK(r.invalid == 1);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].smiles == "CCC");
  CHECK_FALSE(r.records[0].density.has_value());
}

TEST_CASE("rows with t2 before t1 are rejected") {
  LoadResult r = read_text(with_header(
    "CCO,,4g,10,20/1,1,,50,0,1,5,2\n"
    "CCO,,4g,10,20/1,1,,50,0,1,2,5\n"));
  CHECK(r.records.size() == 1);
  REQUIRE(r.rejected.size() == 1);
  CHECK(r.rejected[0].code == ErrorCode::kOrderError);
  CHECK(r.rejected[0].line == 2);
}

TEST_CASE("schema and parse errors") {
  CHECK(code_of([] { (void)read_text("smiles,t1,t2\nCCO,1,2\n"); })
        == ErrorCode::kSchemaError);
  CHECK(code_of([] { (void)read_text(""); }) == ErrorCode::kSchemaError);
  CHECK(code_of([] { (void)read_text(with_header("CCO,,4g,10\n")); })
        == ErrorCode::kSchemaError);
  auto bad_flow = [] {
    (void)read_text(with_header("CCO,,4g,fast,20/1,1,,50,0,1,2,5\n"));
  };
  CHECK(code_of(bad_flow) == ErrorCode::kParseError);
  const std::string msg = error_text(bad_flow);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(msg.find("flow_rate") != std::string::npos);
  CHECK(code_of([] {
          (void)read_text(with_header("CCO,,3g,10,20/1,1,,50,0,1,2,5\n"));
        })
        == ErrorCode::kParseError);
  CHECK(code_of([] { (void)load_records("/nonexistent/records.csv"); })
        == ErrorCode::kIoError);
}

TEST_CASE("records round trip exactly") {
  SynthOptions opt;
  opt.n = 300;
  opt.seed = 12;
  opt.columns = { graph::ColumnSpec::k4g, graph::ColumnSpec::k25g };
  std::vector<ExperimentRecord> recs = synth_dataset(opt).records;
  recs[3].density = 1.0 / 3.0;
  recs[4].cas = "100-66-3";
  std::stringstream ss;
  write_records(ss, recs);
  LoadResult back = read_records(ss);
  CHECK(back.invalid == 0);
  CHECK(back.rejected.empty());
  REQUIRE(back.records.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i)
    CHECK(back.records[i] == recs[i]);
}

TEST_CASE("random split sizes") {
  DatasetSplit s = split_random(100, { 0.8, 0.1, 0.1 }, 1);
  CHECK(s.train.size() == 80);
  CHECK(s.validation.size() == 10);
  CHECK(s.test.size() == 10);
  s = split_random(10, { 0.8, 0.1, 0.1 }, 1);
  CHECK(s.train.size() == 8);
  CHECK(s.validation.size() == 1);
  CHECK(s.test.size() == 1);
  DatasetSplit a = split_random(57, { 0.7, 0.1, 0.2 }, 9);
  DatasetSplit b = split_random(57, { 0.7, 0.1, 0.2 }, 9);
  CHECK(a.train == b.train);
  CHECK(a.validation == b.validation);
  CHECK(a.test == b.test);
  CHECK(a.train != split_random(57, { 0.7, 0.1, 0.2 }, 10).train);
  CHECK(code_of([] { (void)split_random(10, { 0.8, 0.1, 0.2 }, 1); })
        == ErrorCode::kBadProportions);
  CHECK(code_of([] { (void)split_random(10, { 1.1, -0.1, 0.0 }, 1); })
        == ErrorCode::kBadProportions);
}

TEST_CASE("random splits are disjoint, covering and near target sizes") {
  Rng rng(77);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const std::size_t n = 1 + rng.index(300);
    double p0 = rng.uniform(0.0, 1.0);
    double p1 = rng.uniform(0.0, 1.0 - p0);
    std::array<double, 3> props { p0, p1, 1.0 - p0 - p1 };
    DatasetSplit s = split_random(n, props, seed);
    CAPTURE(n);
    CAPTURE(seed);
    check_partition({ &s.train, &s.validation, &s.test }, n);
    const IndexList *parts[3] = { &s.train, &s.validation, &s.test };
    for (int k = 0; k < 3; ++k)
      CHECK(std::abs(static_cast<double>(parts[k]->size())
                     - props[k] * static_cast<double>(n))
            <= 1.0);
  }
}

TEST_CASE("k-fold sizes") {
  std::vector<IndexList> f = kfold(40, 20, 3);
  REQUIRE(f.size() == 20);
  for (const IndexList &fold: f)
    CHECK(fold.size() == 2);
  f = kfold(41, 20, 3);
  std::size_t twos = 0;
  std::size_t threes = 0;
  for (const IndexList &fold: f) {
    twos += fold.size() == 2;
    threes += fold.size() == 3;
  }
  CHECK(twos == 19);
  CHECK(threes == 1);
  CHECK(code_of([] { (void)kfold(5, 6, 1); }) == ErrorCode::kKTooLarge);
  CHECK(code_of([] { (void)kfold(5, 0, 1); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("k-fold partitions are disjoint and covering") {
  Rng rng(78);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const std::size_t n = 1 + rng.index(200);
    const std::size_t k = 1 + rng.index(std::min<std::size_t>(n, 25));
    std::vector<IndexList> folds = kfold(n, k, seed);
    REQUIRE(folds.size() == k);
    std::vector<const IndexList *> parts;
    std::size_t lo = n;
    std::size_t hi = 0;
    for (const IndexList &f: folds) {
      parts.push_back(&f);
      lo = std::min(lo, f.size());
      hi = std::max(hi, f.size());
    }
    check_partition(parts, n);
    CHECK(hi - lo <= 1);
  }
}

namespace {

chem::Fingerprint fp_of(const std::string &smiles) {
  return chem::fingerprint(mol::parse_smiles(smiles));
}

chem::Fingerprint fp_bits(std::initializer_list<std::size_t> on) {
  chem::Fingerprint f;
  for (std::size_t b: on)
    f.bits.set(b);
  return f;
}

}  // namespace

TEST_CASE("similarity groups") {
  // max similarity 0.5: |{0,1}| / |{0,1,2,3}|.
  std::vector<chem::Fingerprint> train = { fp_bits({ 0, 1, 2, 3 }) };
  std::vector<chem::Fingerprint> test = { fp_bits({ 0, 1 }),
                                          fp_bits({ 0, 1, 2, 3 }) };
  std::vector<SimilarityGroup> g = similarity_partition(train, test);
  REQUIRE(g.size() == 6);
  for (const SimilarityGroup &grp: g) {
    const bool has_half = std::count(grp.members.begin(), grp.members.end(),
                                     std::size_t { 0 });
    CHECK(has_half == (grp.threshold <= 0.45));
    // The duplicate is in every group.
    CHECK(std::count(grp.members.begin(), grp.members.end(),
                     std::size_t { 1 })
          == 1);
  }
  for (const SimilarityGroup &grp: similarity_partition({}, test))
    CHECK(grp.members.empty());
}

TEST_CASE("similarity groups match a brute force scan") {
  const auto &corpus = synth_corpus();
  Rng rng(5);
  for (int round = 0; round < 20; ++round) {
    std::vector<std::size_t> perm = rng.permutation(corpus.size());
    std::vector<chem::Fingerprint> train;
    std::vector<chem::Fingerprint> test;
    for (std::size_t i = 0; i < perm.size(); ++i)
      (i < 40 ? train : test).push_back(fp_of(corpus[perm[i]]));
    std::vector<SimilarityGroup> groups = similarity_partition(train, test);
    REQUIRE(groups.size() == kSimilarityThresholds.size());
    for (std::size_t t = 0; t < groups.size(); ++t) {
      CHECK(groups[t].threshold == kSimilarityThresholds[t]);
      std::vector<std::size_t> expect;
      for (std::size_t j = 0; j < test.size(); ++j) {
        bool hit = false;
        for (const auto &tr: train) {
          const std::size_t inter = (tr.bits & test[j].bits).count();
          const std::size_t uni = (tr.bits | test[j].bits).count();
          const double sim = uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
          hit = hit || sim >= kSimilarityThresholds[t];
        }
        if (hit)
          expect.push_back(j);
      }
      CHECK(groups[t].members == expect);
    }
  }
}

TEST_CASE("noise injection") {
  std::vector<double> y;
  Rng rng(8);
  for (int i = 0; i < 10000; ++i)
    y.push_back(rng.uniform(5.0, 80.0));
  CHECK(inject_noise(y, 0.0, 3) == y);
  CHECK(inject_noise(y, 0.3, 3) == inject_noise(y, 0.3, 3));
  CHECK(inject_noise(y, 0.3, 3) != inject_noise(y, 0.3, 4));
  auto sd = [](const std::vector<double> &v) {
    double m = 0.0;
    for (double x: v)
      m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x: v)
      s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
  };
  for (double ratio: { 0.1, 0.2, 0.3, 0.4, 0.5 }) {
    std::vector<double> noisy = inject_noise(y, ratio, 11);
    std::vector<double> diff(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
      diff[i] = noisy[i] - y[i];
    CHECK(std::abs(sd(diff) / (ratio * sd(y)) - 1.0) <= 0.05);
  }
  CHECK(code_of([&] { (void)inject_noise(y, -0.1, 1); })
        == ErrorCode::kRatioOutOfRange);
  CHECK(code_of([&] { (void)inject_noise(y, 1.5, 1); })
        == ErrorCode::kRatioOutOfRange);
}

TEST_CASE("metrics examples") {
  CHECK(r_squared({ 1, 2, 3 }, { 1, 2, 3 }) == 1.0);
  CHECK(mae({ 1, 2, 3 }, { 1, 2, 3 }) == 0.0);
  CHECK(r_squared({ 2, 2, 2 }, { 1, 2, 3 }) == 0.0);
  CHECK(mae({ 0, 0 }, { 1, 3 }) == 2.0);
  CHECK(r_squared({ 0, 0 }, { 1, 3 }) == -4.0);
  CHECK(std::isnan(r_squared({ 1, 2 }, { 3, 3 })));
  CHECK(code_of([] { (void)r_squared({ 1 }, { 1, 2 }); })
        == ErrorCode::kLengthMismatch);
  CHECK(code_of([] { (void)mae({}, {}); }) == ErrorCode::kEmptyDataset);
  Metrics m = compute_metrics({ 1, 2 }, { 1, 2 }, { 0, 0 }, { 1, 3 });
  CHECK(m.n == 2);
  CHECK(m.r2[0] == 1.0);
  CHECK(m.r2[1] == -4.0);
  CHECK(m.mae[1] == 2.0);
  CHECK(m.r2_defined(0));
  CHECK(interval_coverage({ 0, 0, 0, 0 }, { 1, 1, 1, 1 }, { 0.5, 1, 2, -1 })
        == 0.5);
}

TEST_CASE("metrics match a scalar loop") {
  Rng rng(9);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 2 + rng.index(500);
    std::vector<double> p(n);
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = rng.normal(30.0, 10.0);
      p[i] = t[i] + rng.normal(0.0, 5.0);
    }
    double mean = 0.0;
    for (double v: t)
      mean += v;
    mean /= static_cast<double>(n);
    double ss_res = 0.0;
    double ss_tot = 0.0;
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ss_res += (p[i] - t[i]) * (p[i] - t[i]);
      ss_tot += (t[i] - mean) * (t[i] - mean);
      abs_sum += std::abs(p[i] - t[i]);
    }
    CHECK(std::abs(r_squared(p, t) - (1.0 - ss_res / ss_tot)) <= 1e-12);
    CHECK(std::abs(mae(p, t) - abs_sum / static_cast<double>(n)) <= 1e-12);
  }
}

TEST_CASE("synthetic retention law") {
  RetentionLaw law;
  // Closed form for phenol-like inputs.
  const double z = 0.5 + 2.0 * 20.23 / 100.0 + 0.8 * 1.0
                   - 1.2 * std::log(1.0 + 9.0 * 0.2);
  CHECK(law.v1(20.23, 1.0, 0.2, graph::ColumnSpec::k8g)
        == doctest::Approx(10.0 * (1.0 + std::exp(z))).epsilon(1e-14));
  CHECK(law.v2(10.0) == doctest::Approx(16.0));
  for (double tpsa: { 0.0, 26.3, 63.6 }) {
    double prev = law.v1(tpsa, 1.0, 0.0, graph::ColumnSpec::k4g);
    for (int k = 1; k <= 20; ++k) {
      double next = law.v1(tpsa, 1.0, k / 20.0, graph::ColumnSpec::k4g);
      CHECK(next < prev);
      prev = next;
    }
  }
  CHECK(law.v0(graph::ColumnSpec::k4g) < law.v0(graph::ColumnSpec::k8g));
  CHECK(law.v0(graph::ColumnSpec::k25g) < law.v0(graph::ColumnSpec::k40g));
}

TEST_CASE("synthetic datasets") {
  SynthOptions opt;
  opt.n = 500;
  opt.seed = 4;
  opt.noise_sigma = 0.0;
  opt.columns = { graph::ColumnSpec::k4g, graph::ColumnSpec::k40g };
  SynthDataset d = synth_dataset(opt);
  REQUIRE(d.records.size() == 500);
  RetentionLaw law;
  std::set<std::string> corpus(synth_corpus().begin(), synth_corpus().end());
  for (std::size_t i = 0; i < d.records.size(); ++i) {
    const ExperimentRecord &r = d.records[i];
    CHECK(corpus.count(r.smiles) == 1);
    CHECK(r.flow_rate == graph::recommended_flow_rate(r.column));
    const chem::DescriptorVector desc =
      chem::descriptor_vector(mol::parse_smiles(r.smiles));
    const double v1 =
      law.v1(desc.tpsa(), desc.hbd(), r.ratio.ea_fraction(), r.column);
    CHECK(d.truth_v1[i] == v1);
    CHECK(d.truth_v2[i] == law.v2(v1));
    plan::ElutionVolumes v = r.volumes();
    CHECK(v.v1 == doctest::Approx(v1).epsilon(1e-12));
    CHECK(v.v2 == doctest::Approx(law.v2(v1)).epsilon(1e-12));
  }
  opt.noise_sigma = 0.1;
  CHECK(synth_dataset(opt).records == synth_dataset(opt).records);
  SynthOptions other = opt;
  other.seed = 5;
  CHECK(synth_dataset(opt).records != synth_dataset(other).records);
  opt.n = 0;
  CHECK(code_of([&] { (void)synth_dataset(opt); })
        == ErrorCode::kInvalidArgument);
}

TEST_CASE("synthetic corpus") {
  const auto &corpus = synth_corpus();
  CHECK(corpus.size() == 60);
  CHECK(std::count(corpus.begin(), corpus.end(), "C=CCOc1ccccc1") == 1);
  CHECK(std::count(corpus.begin(), corpus.end(), "C=CCc1ccccc1O") == 1);
  for (const std::string &s: corpus)
    CHECK_NOTHROW((void)mol::parse_smiles(s));
  CHECK(synth_ratios().size() == 7);
}

TEST_CASE("examples and baseline tables follow the records") {
  SynthOptions opt;
  opt.n = 20;
  opt.seed = 2;
  std::vector<ExperimentRecord> recs = synth_dataset(opt).records;
  model::Featurizer f;
  std::vector<model::Example> ex = to_examples(recs, f);
  BaselineTable table = to_baseline_table(recs, f);
  REQUIRE(ex.size() == recs.size());
  REQUIRE(table.rows.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    plan::ElutionVolumes v = recs[i].volumes();
    CHECK(ex[i].v1 == v.v1);
    CHECK(ex[i].v2 == v.v2);
    CHECK(table.targets[i] == model::BaselineTarget { v.v1, v.v2 });
    CHECK(table.rows[i].size() == model::kBaselineWidth);
    CHECK(ex[i].pair == f.pair(recs[i].smiles, recs[i].features()));
  }
  IndexList idx = { 3, 0, 7 };
  std::vector<ExperimentRecord> picked = select(recs, idx);
  REQUIRE(picked.size() == 3);
  CHECK(picked[0] == recs[3]);
  CHECK(picked[2] == recs[7]);
}

namespace {

SweepOptions tiny_sweep() {
  SweepOptions o;
  o.config.num_layers = 1;
  o.config.embed_dim = 4;
  o.config.batch_size = 16;
  o.config.max_epochs = 2;
  o.split_seed = 3;
  o.noise_seed = 4;
  return o;
}

std::vector<model::Example> sweep_data() {
  static model::Featurizer f;
  SynthOptions opt;
  opt.n = 60;
  opt.seed = 8;
  return to_examples(synth_dataset(opt).records, f);
}

}  // namespace

TEST_CASE("a one point sweep gives one row") {
  SweepResult r = sweep_train_proportion(sweep_data(), { 0.5 }, tiny_sweep());
  REQUIRE(r.points.size() == 1);
  CHECK(r.points[0].train_size == 30);
  CHECK(count_inversions(r) == 0);
  std::ostringstream os;
  write_sweep_table(os, r);
  std::istringstream is(os.str());
  std::string header, row, extra;
  std::getline(is, header);
  std::getline(is, row);
  CHECK(header.rfind("sweep,value,train_size,r2_v1", 0) == 0);
  CHECK(row.rfind("train_proportion,0.5,30,", 0) == 0);
  CHECK_FALSE(std::getline(is, extra));
}

TEST_CASE("sweeps validate their grids") {
  CHECK(code_of([] {
          (void)sweep_train_proportion(sweep_data(), { 0.8 }, tiny_sweep());
        })
        == ErrorCode::kInvalidArgument);
  CHECK(code_of([] {
          (void)sweep_noise(sweep_data(), { 2.0 }, tiny_sweep());
        })
        == ErrorCode::kRatioOutOfRange);
  CHECK(code_of([] { (void)sweep_noise({}, { 0.0 }, tiny_sweep()); })
        == ErrorCode::kEmptyDataset);
}

TEST_CASE("noise sweep points share the test split") {
  SweepResult a = sweep_noise(sweep_data(), { 0.0, 0.0 }, tiny_sweep());
  REQUIRE(a.points.size() == 2);
  CHECK(a.points[0].metrics.r2 == a.points[1].metrics.r2);
  CHECK(a.points[0].train_size == 42);
}

TEST_CASE("sweep replicates average paired runs") {
  SweepOptions o = tiny_sweep();
  o.replicates = 2;
  const SweepResult both = sweep_noise(sweep_data(), { 0.3 }, o);
  o.replicates = 1;
  const SweepResult first = sweep_noise(sweep_data(), { 0.3 }, o);
  o.config.seed += 1;
  o.noise_seed += 1;
  const SweepResult second = sweep_noise(sweep_data(), { 0.3 }, o);
  for (std::size_t t = 0; t < 2; ++t) {
    const double mean = 0.5 * first.points[0].metrics.r2[t]
                        + 0.5 * second.points[0].metrics.r2[t];
    CHECK(both.points[0].metrics.r2[t]
          == doctest::Approx(mean).epsilon(1e-12));
  }
  o.replicates = 0;
  CHECK(code_of([&] { (void)sweep_noise(sweep_data(), { 0.0 }, o); })
        == ErrorCode::kInvalidArgument);
}

TEST_CASE("sweep inversions") {
  SweepResult r { SweepKind::kTrainProportion, {} };
  for (double v: { 0.1, 0.5, 0.3, 0.9 }) {
    SweepPoint p;
    p.metrics.r2 = { v, v };
    r.points.push_back(p);
  }
  CHECK(count_inversions(r) == 1);
  r.kind = SweepKind::kNoiseRatio;
  CHECK(count_inversions(r) == 2);
}
