//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/models/baseline.h"

#include <cmath>
#include <limits>
#include <string>

#include "ccpred/core/error.h"
#include "ccpred/core/rng.h"
#include "ccpred/gnn/optim.h"
#include "ccpred/gnn/tape.h"

namespace ccpred::model {

namespace {

using nn::Tensor;
using nn::Var;

constexpr std::uint64_t kShuffleSalt = 0xba5e11e5ULL;

void check_rows(const std::vector<BaselineRow> &rows) {
  for (const BaselineRow &r: rows) {
    if (r.size() != kBaselineWidth)
      throw Error(ErrorCode::kWidthMismatch,
                  "baseline rows are " + std::to_string(kBaselineWidth)
                    + " wide, got " + std::to_string(r.size()));
  }
}

std::string layer(int k, const char *field) {
  return "fc" + std::to_string(k) + "." + field;
}

Tensor input_tensor(const std::vector<BaselineRow> &rows,
                    const std::size_t *idx, std::size_t n,
                    const Standardizer &norm) {
  Tensor x(n, kBaselineWidth);
  for (std::size_t i = 0; i < n; ++i) {
    const BaselineRow &r = rows[idx ? idx[i] : i];
    for (std::size_t c = 0; c < kBaselineWidth; ++c)
      x(i, c) = norm.forward(c, r[c]);
  }
  return x;
}

Tensor target_tensor(const std::vector<BaselineTarget> &t,
                     const std::size_t *idx, std::size_t n,
                     const Standardizer &norm) {
  Tensor y(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const BaselineTarget &v = t[idx ? idx[i] : i];
    y(i, 0) = norm.forward(0, v[0]);
    y(i, 1) = norm.forward(1, v[1]);
  }
  return y;
}

}  // namespace

void BaselineMLPConfig::validate() const {
  if (hidden_layers < 1 || hidden_units < 1 || batch_size < 1
      || max_epochs < 0 || early_stop_patience < 1 || !(lr > 0.0)
      || !(leaky_slope >= 0.0))
    throw Error(ErrorCode::kInvalidArgument, "bad baseline configuration");
}

BaselineMLP::BaselineMLP(const BaselineMLPConfig &config, Standardizer inputs,
                         Standardizer targets)
  : config_(config), inputs_(std::move(inputs)), targets_(std::move(targets)) {
  config_.validate();
  if (inputs_.width() != kBaselineWidth || targets_.width() != 2)
    throw Error(ErrorCode::kWidthMismatch, "baseline normalization widths");
  Rng rng(config_.seed);
  std::size_t in = kBaselineWidth;
  const std::size_t h = static_cast<std::size_t>(config_.hidden_units);
  for (int k = 0; k <= config_.hidden_layers; ++k) {
    const std::size_t out = k == config_.hidden_layers ? 2 : h;
    params_.add_xavier(layer(k, "w"), in, out, rng);
    params_.add_zeros(layer(k, "b"), 1, out);
    in = out;
  }
}

namespace {

template <class ParamFn>
Var mlp_forward(nn::Tape &tape, const Tensor &x, int hidden_layers,
                double slope, ParamFn param) {
  Var h = tape.reference(x);
  for (int k = 0; k <= hidden_layers; ++k) {
    h = nn::add_bias(nn::matmul(h, param(layer(k, "w"))), param(layer(k, "b")));
    if (k < hidden_layers)
      h = nn::leaky_relu(h, slope);
  }
  return h;
}

double mse_of(const BaselineMLP &m, const nn::ParameterSet &params,
              const std::vector<BaselineRow> &rows,
              const std::vector<BaselineTarget> &targets) {
  Tensor x = input_tensor(rows, nullptr, rows.size(), m.input_norm());
  nn::Tape tape(false);
  Var y = mlp_forward(tape, x, m.config().hidden_layers,
                      m.config().leaky_slope, [&](const std::string &name) {
    return tape.reference(params.at(name).value);
  });
  Var loss = nn::mse_loss(
    y, target_tensor(targets, nullptr, targets.size(), m.target_norm()));
  return loss.value().item();
}

}  // namespace

std::vector<BaselineTarget>
BaselineMLP::predict(const std::vector<BaselineRow> &rows) const {
  check_rows(rows);
  std::vector<BaselineTarget> out;
  if (rows.empty())
    return out;
  Tensor x = input_tensor(rows, nullptr, rows.size(), inputs_);
  nn::Tape tape(false);
  Var y = mlp_forward(tape, x, config_.hidden_layers, config_.leaky_slope,
                      [&](const std::string &name) {
    return tape.reference(params_.at(name).value);
  });
  const Tensor &v = y.value();
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.push_back({ targets_.inverse(0, v(i, 0)), targets_.inverse(1, v(i, 1)) });
  return out;
}

BaselineMLP baseline_train(const std::vector<BaselineRow> &train_rows,
                           const std::vector<BaselineTarget> &train_targets,
                           const std::vector<BaselineRow> &val_rows,
                           const std::vector<BaselineTarget> &val_targets,
                           const BaselineMLPConfig &config) {
  if (train_rows.empty())
    throw Error(ErrorCode::kEmptyDataset, "no training rows");
  if (train_rows.size() != train_targets.size()
      || val_rows.size() != val_targets.size())
    throw Error(ErrorCode::kLengthMismatch, "rows and targets differ in count");
  check_rows(train_rows);
  check_rows(val_rows);
  std::vector<std::vector<double>> t;
  for (const BaselineTarget &v: train_targets)
    t.push_back({ v[0], v[1] });
  BaselineMLP m(config, Standardizer::fit(train_rows), Standardizer::fit(t));

  const bool use_val = !val_rows.empty();
  const auto &mon_rows = use_val ? val_rows : train_rows;
  const auto &mon_targets = use_val ? val_targets : train_targets;
  nn::AdamState adam;
  adam.lr = config.lr;
  Rng rng(config.seed ^ kShuffleSalt);
  const std::size_t n = train_rows.size();
  const std::size_t bs = std::min(n, static_cast<std::size_t>(config.batch_size));

  double best = mse_of(m, m.params_, mon_rows, mon_targets);
  std::vector<Tensor> best_values;
  for (const auto &p: m.params_)
    best_values.push_back(p.value);
  int since_best = 0;
  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    std::vector<std::size_t> order = rng.permutation(n);
    for (std::size_t b0 = 0; b0 < n; b0 += bs) {
      const std::size_t bn = std::min(bs, n - b0);
      Tensor x = input_tensor(train_rows, order.data() + b0, bn, m.inputs_);
      Tensor y = target_tensor(train_targets, order.data() + b0, bn,
                               m.targets_);
      m.params_.zero_grad();
      try {
        nn::Tape tape;
        Var pred = mlp_forward(tape, x, config.hidden_layers,
                               config.leaky_slope, [&](const std::string &name) {
          return tape.parameter(m.params_.at(name));
        });
        tape.backward(nn::mse_loss(pred, y));
      } catch (const Error &e) {
        if (e.code() == ErrorCode::kNonFinite)
          throw Error(ErrorCode::kDivergenceDetected, e.what());
        throw;
      }
      nn::adam_step(m.params_, adam);
    }
    const double score = mse_of(m, m.params_, mon_rows, mon_targets);
    if (!std::isfinite(score))
      throw Error(ErrorCode::kDivergenceDetected,
                  "non-finite loss at epoch " + std::to_string(epoch));
    if (score < best) {
      best = score;
      for (std::size_t i = 0; i < m.params_.size(); ++i)
        best_values[i] = m.params_[i].value;
      since_best = 0;
    } else if (++since_best >= config.early_stop_patience) {
      break;
    }
  }
  for (std::size_t i = 0; i < m.params_.size(); ++i)
    m.params_[i].value = best_values[i];
  return m;
}

}  // namespace ccpred::model
