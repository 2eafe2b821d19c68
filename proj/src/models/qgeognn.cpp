//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/models/qgeognn.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "ccpred/core/error.h"
#include "ccpred/core/rng.h"
#include "ccpred/graphrep/codebook.h"
#include "ccpred/graphrep/conditions.h"

namespace ccpred::model {

namespace {

using nn::Tape;
using nn::Tensor;
using nn::Var;

constexpr double kRbfGamma = 10.0;
constexpr double kRbfStep = 0.1;
constexpr std::size_t kOutputs = 6;
// Column-info slots inside the 12-wide condition vector.
constexpr std::size_t kColumnSlotBegin = graph::kSolventFields;

void rbf_row(double x, int centers, double *out) {
  for (int c = 0; c < centers; ++c) {
    double d = x - c * kRbfStep;
    out[c] = std::exp(-kRbfGamma * d * d);
  }
}

void invalid(const std::string &msg) {
  throw Error(ErrorCode::kInvalidArgument, msg);
}

Tensor xavier(std::size_t rows, std::size_t cols, Rng &rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Tensor t(rows, cols);
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = rng.uniform(-a, a);
  return t;
}

std::string layer_name(int k, const char *stream, const char *field) {
  return "layer" + std::to_string(k) + "." + stream + "." + field;
}

}  // namespace

void QGeoGNNConfig::validate() const {
  if (num_layers < 1)
    invalid("num_layers must be >= 1");
  if (embed_dim < 1)
    invalid("embed_dim must be >= 1");
  if (quantiles.size() != 3)
    invalid("exactly three quantile levels are supported");
  for (double q: quantiles) {
    if (!(q > 0.0 && q < 1.0))
      throw Error(ErrorCode::kTauOutOfRange,
                  "quantile level " + std::to_string(q) + " outside (0, 1)");
  }
  if (!(quantiles[0] < quantiles[1] && quantiles[1] < quantiles[2]))
    invalid("quantile levels must be strictly increasing");
  if (batch_size < 1)
    invalid("batch_size must be >= 1");
  if (max_epochs < 0)
    invalid("max_epochs must be >= 0");
  if (!(lr > 0.0) || !std::isfinite(lr))
    invalid("lr must be positive");
  if (early_stop_patience < 1)
    invalid("early_stop_patience must be >= 1");
  if (lr_step_size < 1)
    invalid("lr_step_size must be >= 1");
  if (!(lr_gamma > 0.0 && lr_gamma <= 1.0))
    invalid("lr_gamma must be in (0, 1]");
  if (!(final_lr > 0.0))
    invalid("final_lr must be positive");
  if (micro_batch < 1)
    invalid("micro_batch must be >= 1");
}

PackedBatch pack_batch(const std::vector<const graph::GeoGraphPair *> &pairs,
                       const Normalization &norm) {
  const auto &afields = graph::atom_fields();
  const auto &bfields = graph::bond_fields();
  std::array<int, graph::kAtomFields> aoff {};
  std::array<int, graph::kBondFields> boff {};
  for (std::size_t f = 1; f < afields.size(); ++f)
    aoff[f] = aoff[f - 1] + afields[f - 1].cardinality;
  for (std::size_t f = 1; f < bfields.size(); ++f)
    boff[f] = boff[f - 1] + bfields[f - 1].cardinality;
  if (norm.descriptors.width() != chem::kNumDescriptors
      || norm.conditions.width() != graph::kConditionWidth)
    throw Error(ErrorCode::kWidthMismatch, "normalization widths");

  // Unique molecules keyed by digest; structure is compared on collision.
  std::map<std::uint64_t, std::vector<int>> by_digest;
  std::vector<const graph::GeoGraphPair *> unique;
  std::vector<int> record_mol;
  record_mol.reserve(pairs.size());
  for (const graph::GeoGraphPair *p: pairs) {
    if (p->codebook_version != graph::kCodebookVersion)
      throw Error(ErrorCode::kCodebookMismatch,
                  "graph encoded with codebook '" + p->codebook_version
                    + "', model expects '"
                    + std::string(graph::kCodebookVersion) + "'");
    if (p->h.num_nodes() == 0)
      throw Error(ErrorCode::kSingleAtomMolecule, "graph without bonds");
    auto &bucket = by_digest[p->topology_digest()];
    int found = -1;
    for (int m: bucket) {
      const auto *q = unique[m];
      if (q->g.node_features == p->g.node_features
          && q->g.edge_index == p->g.edge_index
          && q->g.edge_bond_codes == p->g.edge_bond_codes && q->h == p->h) {
        found = m;
        break;
      }
    }
    if (found < 0) {
      found = static_cast<int>(unique.size());
      unique.push_back(p);
      bucket.push_back(found);
    }
    record_mol.push_back(found);
  }

  PackedBatch b;
  b.num_records = pairs.size();
  b.num_molecules = unique.size();
  std::size_t n_atoms = 0, n_bonds = 0, n_angles = 0, n_edges = 0;
  std::vector<int> atom_off, bond_off, edge_off;
  for (const auto *p: unique) {
    atom_off.push_back(static_cast<int>(n_atoms));
    bond_off.push_back(static_cast<int>(n_bonds));
    edge_off.push_back(static_cast<int>(n_edges));
    n_atoms += p->g.num_nodes();
    n_bonds += p->h.num_nodes();
    n_angles += p->h.num_edges();
    n_edges += p->g.num_edges();
  }

  b.atom_onehot = Tensor(n_atoms, graph::atom_onehot_width());
  b.bond_rbf = Tensor(n_bonds, QGeoGNN::kLengthCenters);
  b.angle_rbf = Tensor(n_angles, QGeoGNN::kAngleCenters);
  b.descriptors = Tensor(unique.size(), chem::kNumDescriptors);
  b.edge_onehot = Tensor(n_edges, graph::bond_onehot_width());
  b.angle_edges.reserve(n_angles);
  b.angle_molecule.reserve(n_angles);
  b.edge_bond.assign(n_edges, -1);
  std::size_t ar = 0, an = 0;
  for (std::size_t m = 0; m < unique.size(); ++m) {
    const auto *p = unique[m];
    for (const auto &codes: p->g.node_features) {
      for (std::size_t f = 0; f < codes.size(); ++f)
        b.atom_onehot(ar, aoff[f] + codes[f]) = 1.0;
      ++ar;
    }
    for (std::size_t k = 0; k < p->h.num_nodes(); ++k) {
      rbf_row(p->h.bond_lengths[k], QGeoGNN::kLengthCenters,
              &b.bond_rbf(bond_off[m] + k, 0));
      const int e = p->bond_map[k];
      b.edge_bond[edge_off[m] + e] = bond_off[m] + static_cast<int>(k);
      b.edge_bond[edge_off[m] + e + 1] = bond_off[m] + static_cast<int>(k);
    }
    for (std::size_t e = 0; e < p->g.num_edges(); ++e) {
      const auto &codes = p->g.edge_bond_codes[e];
      for (std::size_t f = 0; f < codes.size(); ++f)
        b.edge_onehot(edge_off[m] + e, boff[f] + codes[f]) = 1.0;
    }
    for (std::size_t e = 0; e < p->h.num_edges(); ++e) {
      auto [u, v] = p->h.edge_index[e];
      b.angle_edges.emplace_back(bond_off[m] + u, bond_off[m] + v);
      b.angle_molecule.push_back(static_cast<int>(m));
      rbf_row(p->h.angles[e], QGeoGNN::kAngleCenters, &b.angle_rbf(an, 0));
      ++an;
    }
    for (std::size_t c = 0; c < chem::kNumDescriptors; ++c)
      b.descriptors(m, c) = norm.descriptors.forward(c, p->h.descriptors[c]);
  }

  b.conditions = Tensor(pairs.size(), graph::kConditionWidth);
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const auto *p = pairs[r];
    const int m = record_mol[r];
    for (std::size_t c = 0; c < graph::kConditionWidth; ++c)
      b.conditions(r, c) = norm.conditions.forward(c, p->g.conditions[c]);
    const int base = static_cast<int>(b.record_atom_source.size());
    for (std::size_t i = 0; i < p->g.num_nodes(); ++i) {
      b.record_atom_source.push_back(atom_off[m] + static_cast<int>(i));
      b.atom_record.push_back(static_cast<int>(r));
    }
    for (std::size_t e = 0; e < p->g.num_edges(); ++e) {
      auto [u, v] = p->g.edge_index[e];
      b.bond_edges.emplace_back(base + u, base + v);
      b.bond_edge_source.push_back(edge_off[m] + static_cast<int>(e));
      b.bond_edge_record.push_back(static_cast<int>(r));
    }
  }
  return b;
}

QGeoGNN::QGeoGNN(const QGeoGNNConfig &config, Normalization norm)
  : config_(config), norm_(std::move(norm)) {
  config_.validate();
  if (norm_.target.width() != 2
      || norm_.descriptors.width() != chem::kNumDescriptors
      || norm_.conditions.width() != graph::kConditionWidth)
    throw Error(ErrorCode::kWidthMismatch, "normalization widths");
  meta_.seed = config_.seed;
  init_params();
}

void QGeoGNN::init_params() {
  Rng rng(config_.seed);
  const std::size_t d = static_cast<std::size_t>(config_.embed_dim);
  params_.add_xavier("atom_embed.w", graph::atom_onehot_width(), d, rng);
  params_.add_zeros("atom_embed.b", 1, d);
  params_.add_xavier("bond_embed.w", kLengthCenters, d, rng);
  params_.add_zeros("bond_embed.b", 1, d);
  for (int k = 0; k < config_.num_layers; ++k) {
    params_.add_xavier(layer_name(k, "h", "angle_w"), kAngleCenters, d, rng);
    params_.add_xavier(layer_name(k, "h", "desc_w"), chem::kNumDescriptors, d,
                       rng);
    params_.add_zeros(layer_name(k, "h", "eps"), 1, 1);
    params_.add_xavier(layer_name(k, "h", "mlp.w1"), d, d, rng);
    params_.add_zeros(layer_name(k, "h", "mlp.b1"), 1, d);
    params_.add_xavier(layer_name(k, "h", "mlp.w2"), d, d, rng);
    params_.add_zeros(layer_name(k, "h", "mlp.b2"), 1, d);
    params_.add_xavier(layer_name(k, "g", "bond_w"), d, d, rng);
    params_.add_xavier(layer_name(k, "g", "type_w"), graph::bond_onehot_width(),
                       d, rng);
    params_.add_xavier(layer_name(k, "g", "cond_w"), graph::kConditionWidth, d,
                       rng);
    params_.add_zeros(layer_name(k, "g", "eps"), 1, 1);
    params_.add_xavier(layer_name(k, "g", "mlp.w1"), d, d, rng);
    params_.add_zeros(layer_name(k, "g", "mlp.b1"), 1, d);
    params_.add_xavier(layer_name(k, "g", "mlp.w2"), d, d, rng);
    params_.add_zeros(layer_name(k, "g", "mlp.b2"), 1, d);
  }
  params_.add_xavier("readout.w1", d, d, rng);
  params_.add_zeros("readout.b1", 1, d);
  params_.add_xavier("readout.w2", d, kOutputs, rng);
  params_.add_zeros("readout.b2", 1, kOutputs);
}

Var QGeoGNN::run(Tape &tape, const PackedBatch &batch,
                 const std::function<Var(const std::string &)> &param,
                 bool features_only) const {
  using namespace nn;
  Var a_unique = add_bias(matmul(tape.reference(batch.atom_onehot),
                                 param("atom_embed.w")),
                          param("atom_embed.b"));
  Var a = gather_rows(a_unique, batch.record_atom_source);
  Var b = add_bias(matmul(tape.reference(batch.bond_rbf), param("bond_embed.w")),
                   param("bond_embed.b"));
  Var angle_rbf = tape.reference(batch.angle_rbf);
  Var desc = tape.reference(batch.descriptors);
  Var edge_onehot = tape.reference(batch.edge_onehot);
  Var cond = tape.reference(batch.conditions);
  for (int k = 0; k < config_.num_layers; ++k) {
    auto p = [&](const char *stream, const char *field) {
      return param(layer_name(k, stream, field));
    };
    Var eh = add(matmul(angle_rbf, p("h", "angle_w")),
                 gather_rows(matmul(desc, p("h", "desc_w")),
                             batch.angle_molecule));
    Mlp2 mh { p("h", "mlp.w1"), p("h", "mlp.b1"), p("h", "mlp.w2"),
              p("h", "mlp.b2") };
    Var b_next =
      mlp2(gin_aggregate(b, batch.angle_edges, eh, p("h", "eps")), mh);

    Var ub = add(gather_rows(matmul(b_next, p("g", "bond_w")), batch.edge_bond),
                 matmul(edge_onehot, p("g", "type_w")));
    Var eg = add(gather_rows(ub, batch.bond_edge_source),
                 gather_rows(matmul(cond, p("g", "cond_w")),
                             batch.bond_edge_record));
    Mlp2 mg { p("g", "mlp.w1"), p("g", "mlp.b1"), p("g", "mlp.w2"),
              p("g", "mlp.b2") };
    Var a_next =
      mlp2(gin_aggregate(a, batch.bond_edges, eg, p("g", "eps")), mg);
    if (k + 1 < config_.num_layers) {
      a = relu(a_next);
      b = relu(b_next);
    } else {
      a = a_next;
      b = b_next;
    }
  }
  Var pooled = sum_pool(a, batch.atom_record, batch.num_records);
  Var hidden =
    relu(add_bias(matmul(pooled, param("readout.w1")), param("readout.b1")));
  if (features_only)
    return hidden;
  Var raw = add_bias(matmul(hidden, param("readout.w2")), param("readout.b2"));
  return ordered_quantiles(raw);
}

Var QGeoGNN::forward(Tape &tape, const PackedBatch &batch) {
  return run(tape, batch, [&](const std::string &name) {
    return tape.parameter(params_.at(name));
  });
}

Var QGeoGNN::infer(Tape &tape, const PackedBatch &batch) const {
  return run(tape, batch, [&](const std::string &name) {
    return tape.reference(params_.at(name).value);
  });
}

Var QGeoGNN::readout_features(Tape &tape, const PackedBatch &batch) const {
  return run(
    tape, batch,
    [&](const std::string &name) {
      return tape.reference(params_.at(name).value);
    },
    true);
}

QuantilePrediction QGeoGNN::decode(const double *row) const {
  auto triple = [&](std::size_t col, const double *z) {
    const double w = z[2] - z[0];
    const double s = interval_scale_[col];
    const double lo = std::min(z[0] - s * w, z[1]);
    const double hi = std::max(z[2] + s * w, z[1]);
    QuantileTriple t;
    t.q10 = std::max(0.0, norm_.target.inverse(col, lo));
    t.q50 = std::max(0.0, norm_.target.inverse(col, z[1]));
    t.q90 = std::max(0.0, norm_.target.inverse(col, hi));
    return t;
  };
  QuantilePrediction p;
  p.v1 = triple(0, row);
  p.v2 = triple(1, row + 3);
  p.v2.q10 = std::max(p.v2.q10, p.v1.q10);
  p.v2.q50 = std::max(p.v2.q50, p.v1.q50);
  p.v2.q90 = std::max(p.v2.q90, p.v1.q90);
  return p;
}

std::vector<QuantilePrediction>
QGeoGNN::predict(const std::vector<const graph::GeoGraphPair *> &pairs) const {
  std::vector<QuantilePrediction> out;
  out.reserve(pairs.size());
  const std::size_t chunk = static_cast<std::size_t>(config_.micro_batch);
  for (std::size_t begin = 0; begin < pairs.size(); begin += chunk) {
    const std::size_t end = std::min(pairs.size(), begin + chunk);
    std::vector<const graph::GeoGraphPair *> part(pairs.begin() + begin,
                                                  pairs.begin() + end);
    PackedBatch batch = pack_batch(part, norm_);
    Tape tape(false);
    Var y = infer(tape, batch);
    const Tensor &v = y.value();
    for (std::size_t r = 0; r < v.rows(); ++r)
      out.push_back(decode(v.row(r)));
  }
  return out;
}

QuantilePrediction QGeoGNN::predict(const graph::GeoGraphPair &pair) const {
  return predict(std::vector<const graph::GeoGraphPair *> { &pair })[0];
}

std::vector<std::string> QGeoGNN::output_layer_names() {
  return { "readout.w2", "readout.b2" };
}

void QGeoGNN::reinit_output_layer(std::uint64_t seed) {
  Rng rng(seed);
  nn::Parameter &w = params_.at("readout.w2");
  w.value = xavier(w.value.rows(), w.value.cols(), rng);
  nn::Parameter &b = params_.at("readout.b2");
  b.value.fill(0.0);
}

void QGeoGNN::refresh_column_slots(const Standardizer &conditions) {
  if (conditions.width() != graph::kConditionWidth)
    throw Error(ErrorCode::kWidthMismatch, "condition normalization width");
  for (std::size_t c = kColumnSlotBegin;
       c < kColumnSlotBegin + graph::kColumnFields; ++c) {
    norm_.conditions.mean[c] = conditions.mean[c];
    norm_.conditions.std[c] = conditions.std[c];
  }
}

}  // namespace ccpred::model
