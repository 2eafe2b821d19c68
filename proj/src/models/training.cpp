//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/models/training.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "ccpred/core/error.h"
#include "ccpred/core/rng.h"
#include "ccpred/gnn/optim.h"

namespace ccpred::model {

namespace {

using nn::Tensor;

// Keeps the shuffle stream apart from parameter initialization.
constexpr std::uint64_t kShuffleSalt = 0x5d1e0c0ffee5ULL;

std::vector<const graph::GeoGraphPair *>
pair_ptrs(const std::vector<Example> &data, const std::size_t *idx,
          std::size_t n) {
  std::vector<const graph::GeoGraphPair *> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = &data[idx[i]].pair;
  return out;
}

Tensor targets(const QGeoGNN &model, const std::vector<Example> &data,
               const std::size_t *idx, std::size_t n) {
  const Standardizer &t = model.normalization().target;
  Tensor out(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, 0) = t.forward(0, data[idx[i]].v1);
    out(i, 1) = t.forward(1, data[idx[i]].v2);
  }
  return out;
}

double inverse_softplus(double x) {
  return x > 30.0 ? x : std::log(std::expm1(x));
}

// Newton iterations on erf from a rational first guess.
double inverse_erf(double x) {
  const double a = 0.147;
  const double ln = std::log(1.0 - x * x);
  const double t = 2.0 / (std::numbers::pi * a) + ln / 2.0;
  double y = std::copysign(std::sqrt(std::sqrt(t * t - ln / a) - t), x);
  for (int i = 0; i < 3; ++i) {
    const double err = std::erf(y) - x;
    y -= err / (2.0 / std::sqrt(std::numbers::pi) * std::exp(-y * y));
  }
  return y;
}

[[noreturn]] void diverged(const std::string &what) {
  throw Error(ErrorCode::kDivergenceDetected, what);
}

double loss_of(const QGeoGNN &model, const std::vector<Example> &data) {
  if (data.empty())
    return std::numeric_limits<double>::quiet_NaN();
  std::vector<std::size_t> idx(data.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    idx[i] = i;
  const std::size_t chunk =
    static_cast<std::size_t>(model.config().micro_batch);
  double total = 0.0;
  for (std::size_t begin = 0; begin < data.size(); begin += chunk) {
    const std::size_t n = std::min(chunk, data.size() - begin);
    PackedBatch batch =
      pack_batch(pair_ptrs(data, idx.data() + begin, n), model.normalization());
    nn::Tape tape(false);
    nn::Var y = model.infer(tape, batch);
    nn::Var loss =
      nn::multi_pinball_loss(y, targets(model, data, idx.data() + begin, n),
                             model.config().quantiles);
    total += loss.value().item() * static_cast<double>(n);
  }
  return total / static_cast<double>(data.size());
}

// Split-conformal scale per target: the smallest s such that a share
// hi_tau - lo_tau of the held-out rows falls inside the widened interval,
// with the usual (n + 1) finite-sample correction.
std::array<double, 2> conformal_scale(const QGeoGNN &model,
                                      const std::vector<Example> &data) {
  std::array<std::vector<double>, 2> scores;
  std::vector<std::size_t> idx(data.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    idx[i] = i;
  const std::size_t chunk =
    static_cast<std::size_t>(model.config().micro_batch);
  for (std::size_t begin = 0; begin < data.size(); begin += chunk) {
    const std::size_t n = std::min(chunk, data.size() - begin);
    PackedBatch batch =
      pack_batch(pair_ptrs(data, idx.data() + begin, n), model.normalization());
    nn::Tape tape(false);
    nn::Var y = model.infer(tape, batch);
    const Tensor &z = y.value();
    const Tensor t = targets(model, data, idx.data() + begin, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < 2; ++c) {
        const double lo = z(r, 3 * c), hi = z(r, 3 * c + 2);
        scores[c].push_back(std::max(lo - t(r, c), t(r, c) - hi) / (hi - lo));
      }
    }
  }
  const auto &q = model.config().quantiles;
  const double level = q.back() - q.front();
  std::array<double, 2> out {};
  for (std::size_t c = 0; c < 2; ++c) {
    auto &s = scores[c];
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    const std::size_t k = std::min(
      s.size(), static_cast<std::size_t>(std::ceil((n + 1.0) * level)));
    out[c] = s[std::max<std::size_t>(k, 1) - 1];
  }
  return out;
}

// Shared optimization loop; model arrives initialized and normalized.
void fit(QGeoGNN &model, const std::vector<Example> &train,
         const std::vector<Example> &val, const EpochCallback &on_epoch) {
  const QGeoGNNConfig &cfg = model.config();
  if (train.empty())
    throw Error(ErrorCode::kEmptyDataset, "no training records");
  nn::StepLR schedule { cfg.lr, cfg.lr_gamma, cfg.lr_step_size,
                        std::min(cfg.final_lr, cfg.lr) };
  nn::AdamState adam;
  Rng rng(cfg.seed ^ kShuffleSalt);
  nn::ParameterSet &params = model.params();
  const std::size_t n = train.size();
  const std::size_t batch_size =
    std::min(n, static_cast<std::size_t>(cfg.batch_size));
  const std::size_t micro = static_cast<std::size_t>(cfg.micro_batch);
  const bool use_val = !val.empty();

  auto monitored = [&] {
    return use_val ? loss_of(model, val) : loss_of(model, train);
  };
  auto snapshot = [&] {
    std::vector<Tensor> s;
    s.reserve(params.size());
    for (const auto &p: params)
      s.push_back(p.value);
    return s;
  };

  TrainMetadata &meta = model.metadata();
  meta.seed = cfg.seed;
  meta.train_size = train.size();
  meta.val_size = val.size();
  meta.epochs_run = 0;
  meta.best_epoch = -1;
  meta.best_val_loss = monitored();
  if (!std::isfinite(meta.best_val_loss))
    diverged("non-finite loss before training");
  std::vector<Tensor> best = snapshot();
  int since_best = 0;

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    adam.lr = schedule.lr(epoch);
    std::vector<std::size_t> order = rng.permutation(n);
    double train_sum = 0.0;
    for (std::size_t b0 = 0; b0 < n; b0 += batch_size) {
      const std::size_t bn = std::min(batch_size, n - b0);
      params.zero_grad();
      for (std::size_t m0 = 0; m0 < bn; m0 += micro) {
        const std::size_t mn = std::min(micro, bn - m0);
        const std::size_t *idx = order.data() + b0 + m0;
        PackedBatch batch =
          pack_batch(pair_ptrs(train, idx, mn), model.normalization());
        try {
          nn::Tape tape;
          nn::Var y = model.forward(tape, batch);
          nn::Var loss = nn::multi_pinball_loss(
            y, targets(model, train, idx, mn), cfg.quantiles);
          const double w = static_cast<double>(mn) / static_cast<double>(bn);
          train_sum += loss.value().item() * static_cast<double>(mn);
          tape.backward(nn::scale(loss, w));
        } catch (const Error &e) {
          if (e.code() == ErrorCode::kNonFinite)
            diverged(std::string("epoch ") + std::to_string(epoch) + ": "
                     + e.what());
          throw;
        }
      }
      nn::adam_step(params, adam);
    }
    for (const auto &p: params) {
      if (!p.value.all_finite())
        diverged("parameter " + p.name + " became non-finite at epoch "
                 + std::to_string(epoch));
    }
    const double train_loss = train_sum / static_cast<double>(n);
    const double val_loss = use_val ? loss_of(model, val) : train_loss;
    if (!std::isfinite(train_loss) || !std::isfinite(val_loss))
      diverged("non-finite loss at epoch " + std::to_string(epoch));
    meta.epochs_run = epoch + 1;
    if (on_epoch)
      on_epoch({ epoch, adam.lr, train_loss, val_loss });
    // Train loss is measured during the epoch; re-evaluate at its end so the
    // stored best matches the restored parameters.
    const double score = use_val ? val_loss : loss_of(model, train);
    if (score < meta.best_val_loss) {
      meta.best_val_loss = score;
      meta.best_epoch = epoch;
      best = snapshot();
      since_best = 0;
    } else if (++since_best >= cfg.early_stop_patience) {
      break;
    }
  }
  for (std::size_t i = 0; i < params.size(); ++i)
    params[i].value = best[i];
  model.set_interval_scale(cfg.calibrate_intervals && use_val
                             ? conformal_scale(model, val)
                             : std::array<double, 2> {});
}

}  // namespace

void fit_head_least_squares(QGeoGNN &model, const std::vector<Example> &data,
                            double ridge) {
  if (data.empty())
    throw Error(ErrorCode::kEmptyDataset, "no records for the head fit");
  std::vector<std::size_t> idx(data.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    idx[i] = i;
  nn::Parameter &w = model.params().at("readout.w2");
  nn::Parameter &b = model.params().at("readout.b2");
  const std::size_t d = w.value.rows();
  const std::size_t n = data.size();
  Eigen::MatrixXd h(n, d);
  Eigen::MatrixXd y(n, 2);
  const std::size_t chunk =
    static_cast<std::size_t>(model.config().micro_batch);
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    const std::size_t m = std::min(chunk, n - begin);
    PackedBatch batch =
      pack_batch(pair_ptrs(data, idx.data() + begin, m), model.normalization());
    nn::Tape tape(false);
    const Tensor &f = model.readout_features(tape, batch).value();
    const Tensor t = targets(model, data, idx.data() + begin, m);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < d; ++c)
        h(begin + r, c) = f(r, c);
      y(begin + r, 0) = t(r, 0);
      y(begin + r, 1) = t(r, 1);
    }
  }
  // Centered ridge so the intercept is not penalized.
  const Eigen::RowVectorXd h_mean = h.colwise().mean();
  const Eigen::RowVectorXd y_mean = y.colwise().mean();
  const Eigen::MatrixXd hc = h.rowwise() - h_mean;
  const Eigen::MatrixXd yc = y.rowwise() - y_mean;
  Eigen::MatrixXd gram = hc.transpose() * hc;
  gram.diagonal().array() += ridge * static_cast<double>(n);
  const Eigen::MatrixXd coef = gram.ldlt().solve(hc.transpose() * yc);
  const Eigen::MatrixXd resid = yc - hc * coef;

  // Lower and upper raw outputs get a constant spread matching the
  // residual quantiles of a normal with the residual scale.
  const auto &q = model.config().quantiles;
  const double z_lo = std::sqrt(2.0) * inverse_erf(2.0 * q.front() - 1.0);
  const double z_hi = std::sqrt(2.0) * inverse_erf(2.0 * q.back() - 1.0);
  w.value.fill(0.0);
  b.value.fill(0.0);
  for (std::size_t t = 0; t < 2; ++t) {
    const double sd = std::max(
      std::sqrt(resid.col(t).squaredNorm() / static_cast<double>(n)), 1e-3);
    for (std::size_t c = 0; c < d; ++c)
      w.value(c, 3 * t + 1) = coef(c, t);
    b.value(0, 3 * t + 1) = y_mean(t) - (h_mean * coef.col(t))(0);
    b.value(0, 3 * t) = inverse_softplus(-z_lo * sd);
    b.value(0, 3 * t + 2) = inverse_softplus(z_hi * sd);
  }
}

Normalization fit_normalization(const std::vector<Example> &train) {
  if (train.empty())
    throw Error(ErrorCode::kEmptyDataset, "no training records");
  std::vector<std::vector<double>> t, d, c;
  t.reserve(train.size());
  d.reserve(train.size());
  c.reserve(train.size());
  for (const Example &e: train) {
    t.push_back({ e.v1, e.v2 });
    d.emplace_back(e.pair.h.descriptors.begin(), e.pair.h.descriptors.end());
    c.emplace_back(e.pair.g.conditions.begin(), e.pair.g.conditions.end());
  }
  return { Standardizer::fit(t), Standardizer::fit(d), Standardizer::fit(c) };
}

QGeoGNN train_qgeognn(const QGeoGNNConfig &config,
                      const std::vector<Example> &train,
                      const std::vector<Example> &val,
                      const EpochCallback &on_epoch) {
  QGeoGNN model(config, fit_normalization(train));
  fit(model, train, val, on_epoch);
  return model;
}

QGeoGNN transfer(const QGeoGNN &base, const TransferConfig &config,
                 const std::vector<Example> &train,
                 const std::vector<Example> &val,
                 const EpochCallback &on_epoch) {
  if (train.empty())
    throw Error(ErrorCode::kEmptyDataset, "no training records");
  QGeoGNN model = base;
  QGeoGNNConfig &cfg = model.mutable_config();
  cfg.lr = config.lr;
  cfg.lr_step_size = config.lr_step_size;
  cfg.lr_gamma = config.lr_gamma;
  cfg.final_lr = config.final_lr;
  cfg.max_epochs = config.max_epochs;
  cfg.batch_size = config.batch_size;
  cfg.early_stop_patience = config.early_stop_patience;
  cfg.seed = config.seed;
  cfg.validate();
  if (!(config.ridge > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "ridge must be positive");
  const Normalization fresh = fit_normalization(train);
  model.mutable_normalization().target = fresh.target;
  model.refresh_column_slots(fresh.conditions);
  model.reinit_output_layer(config.seed);
  model.metadata() = TrainMetadata {};
  if (config.head_init == HeadInit::kLeastSquares)
    fit_head_least_squares(model, train, config.ridge);
  fit(model, train, val, on_epoch);
  model.metadata().parent = config.parent;
  return model;
}

double evaluate_loss(const QGeoGNN &model, const std::vector<Example> &data) {
  if (data.empty())
    throw Error(ErrorCode::kEmptyDataset, "no records to evaluate");
  return loss_of(model, data);
}

}  // namespace ccpred::model
