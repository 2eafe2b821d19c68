//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_MODELS_QGEOGNN_H_
#define CCPRED_MODELS_QGEOGNN_H_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ccpred/gnn/gin.h"
#include "ccpred/gnn/params.h"
#include "ccpred/gnn/tape.h"
#include "ccpred/graphrep/graph_pair.h"
#include "ccpred/models/normalization.h"

namespace ccpred::model {

struct QGeoGNNConfig {
  int num_layers = 5;
  int embed_dim = 128;
  std::vector<double> quantiles { 0.10, 0.50, 0.90 };
  int batch_size = 2048;  // effective batch is min(batch_size, train size)
  int max_epochs = 1500;
  double lr = 1e-3;
  int early_stop_patience = 50;
  std::uint64_t seed = 0;
  // StepLR; gamma = 1 keeps the rate at lr.
  int lr_step_size = 100;
  double lr_gamma = 1.0;
  double final_lr = 1e-4;
  // Records per forward pass inside a batch. Gradients are accumulated, so
  // this bounds memory without changing the update.
  int micro_batch = 128;
  // After training, widen or narrow [lo, hi] on the validation split so its
  // empirical coverage matches hi - lo (scaled split-conformal step).
  bool calibrate_intervals = true;

  // Throws kInvalidArgument.
  void validate() const;
  bool operator==(const QGeoGNNConfig &) const = default;
};

struct QuantileTriple {
  double q10 = 0.0;
  double q50 = 0.0;
  double q90 = 0.0;
  bool operator==(const QuantileTriple &) const = default;
};

// mL.
struct QuantilePrediction {
  QuantileTriple v1;
  QuantileTriple v2;
  bool operator==(const QuantilePrediction &) const = default;
};

struct Normalization {
  Standardizer target;       // V1, V2 in mL
  Standardizer descriptors;  // 16
  Standardizer conditions;   // 12
  bool operator==(const Normalization &) const = default;
};

struct TrainMetadata {
  int epochs_run = 0;
  int best_epoch = -1;
  double best_val_loss = 0.0;
  std::uint64_t seed = 0;
  std::size_t train_size = 0;
  std::size_t val_size = 0;
  std::string parent;  // non-empty for transferred models
  bool operator==(const TrainMetadata &) const = default;
};

// Flattened constant inputs for a set of pairs. Molecules repeated across
// records (same topology, different conditions) are stored once.
struct PackedBatch {
  std::size_t num_records = 0;
  std::size_t num_molecules = 0;
  nn::Tensor atom_onehot;   // unique atoms
  nn::Tensor bond_rbf;      // unique bonds
  nn::Tensor angle_rbf;     // unique angle edges
  nn::Tensor descriptors;   // per molecule, standardized
  nn::EdgeList angle_edges;           // unique bond -> unique bond
  std::vector<int> angle_molecule;    // angle edge -> molecule
  nn::Tensor edge_onehot;             // unique directed bond edges
  std::vector<int> edge_bond;         // unique directed edge -> unique bond
  nn::Tensor conditions;              // per record, standardized
  std::vector<int> record_atom_source;  // record atom -> unique atom
  std::vector<int> atom_record;         // record atom -> record
  nn::EdgeList bond_edges;              // record atom -> record atom
  std::vector<int> bond_edge_source;    // record edge -> unique directed edge
  std::vector<int> bond_edge_record;    // record edge -> record
};

// Throws kCodebookMismatch, kSingleAtomMolecule.
PackedBatch pack_batch(const std::vector<const graph::GeoGraphPair *> &pairs,
                       const Normalization &norm);

class QGeoGNN {
public:
  static constexpr int kLengthCenters = 26;  // 0.0 .. 2.5 angstrom
  static constexpr int kAngleCenters = 32;   // 0.0 .. 3.1 rad

  // Parameters are drawn from config.seed.
  QGeoGNN(const QGeoGNNConfig &config, Normalization norm);

  const QGeoGNNConfig &config() const { return config_; }
  QGeoGNNConfig &mutable_config() { return config_; }
  const Normalization &normalization() const { return norm_; }
  Normalization &mutable_normalization() { return norm_; }
  nn::ParameterSet &params() { return params_; }
  const nn::ParameterSet &params() const { return params_; }
  TrainMetadata &metadata() { return meta_; }
  const TrainMetadata &metadata() const { return meta_; }

  // Normalized quantiles, one row per record: V1 (lo, mid, hi) then V2.
  // Parameters are recorded as trainable.
  nn::Var forward(nn::Tape &tape, const PackedBatch &batch);
  // Same values as forward() with parameters read as constants.
  nn::Var infer(nn::Tape &tape, const PackedBatch &batch) const;
  // Input of the output layer, one row per record.
  nn::Var readout_features(nn::Tape &tape, const PackedBatch &batch) const;

  // Read-only; safe to call concurrently on a shared model.
  std::vector<QuantilePrediction>
  predict(const std::vector<const graph::GeoGraphPair *> &pairs) const;
  QuantilePrediction predict(const graph::GeoGraphPair &pair) const;

  // Apply the interval scale, denormalize one output row, clamp at 0 and
  // keep V2 >= V1 quantile-wise.
  QuantilePrediction decode(const double *row) const;

  // Per target: lo -= s * (hi - lo) and hi += s * (hi - lo), both capped at
  // the median. Zero leaves the raw quantiles.
  const std::array<double, 2> &interval_scale() const {
    return interval_scale_;
  }
  void set_interval_scale(const std::array<double, 2> &s) {
    interval_scale_ = s;
  }

  // Names of the final linear layer.
  static std::vector<std::string> output_layer_names();
  void reinit_output_layer(std::uint64_t seed);
  // Takes the normalization of the three column-info condition slots from
  // conditions; weights are untouched.
  void refresh_column_slots(const Standardizer &conditions);

private:
  nn::Var run(nn::Tape &tape, const PackedBatch &batch,
              const std::function<nn::Var(const std::string &)> &param,
              bool features_only = false) const;
  void init_params();

  QGeoGNNConfig config_;
  Normalization norm_;
  nn::ParameterSet params_;
  TrainMetadata meta_;
  std::array<double, 2> interval_scale_ {};
};

}  // namespace ccpred::model

#endif  // CCPRED_MODELS_QGEOGNN_H_
