//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_GNN_TAPE_H_
#define CCPRED_GNN_TAPE_H_

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "ccpred/gnn/params.h"
#include "ccpred/gnn/tensor.h"

namespace ccpred::nn {

class Tape;

struct Var {
  Tape *tape = nullptr;
  int id = -1;

  // Invalidated by the next record() on the same tape.
  const Tensor &value() const;
};

// Records operations in execution order for reverse-mode differentiation.
// Every recorded value is checked for NaN/Inf (kNonFinite).
class Tape {
public:
  using BackwardFn = std::function<void(Tape &, int self)>;

  // With grad_enabled false nothing requires a gradient and no backward
  // closures are kept; parameters are only read.
  explicit Tape(bool grad_enabled = true) : grad_enabled_(grad_enabled) { }
  Tape(const Tape &) = delete;
  Tape &operator=(const Tape &) = delete;

  Var constant(Tensor value);
  // Constant read in place; value must outlive the tape.
  Var reference(const Tensor &value);
  // The parameter must outlive the tape; backward() adds into p.grad.
  Var parameter(Parameter &p);

  // Appends a node. The node requires a gradient iff any input does.
  Var record(Tensor value, std::initializer_list<Var> inputs,
             BackwardFn backward);

  const Tensor &value(int id) const;
  bool requires_grad(int id) const { return nodes_[id].requires_grad; }
  // Gradient slot of node id, zero-filled on first use.
  Tensor &grad(int id);
  std::size_t size() const { return nodes_.size(); }

  // loss must be 1 x 1. Intermediate values and gradients are released as
  // the sweep passes them, so the tape cannot be differentiated twice.
  //
  // Throws kShapeMismatch, kGraphCycle, kInvalidArgument (second call).
  void backward(Var loss);

private:
  struct Node {
    Tensor value;
    const Tensor *ref = nullptr;  // parameter value
    Tensor grad;
    bool has_grad = false;
    Tensor *param_grad = nullptr;
    bool requires_grad = false;
    std::array<int, 3> inputs { -1, -1, -1 };
    BackwardFn backward;
  };

  std::vector<Node> nodes_;
  bool grad_enabled_ = true;
  bool consumed_ = false;
};

// Elementwise and linear-algebra ops. All inputs must share one tape.
Var matmul(Var a, Var b);
Var add(Var a, Var b);
Var sub(Var a, Var b);
// x: n x m, bias: 1 x m.
Var add_bias(Var x, Var bias);
Var relu(Var x);
Var leaky_relu(Var x, double slope = 0.01);
Var softplus(Var x);
Var scale(Var x, double c);
// (1 + eps) * x with eps 1 x 1.
Var scale_one_plus(Var x, Var eps);

// out[i] = x[index[i]].
Var gather_rows(Var x, std::vector<int> index);
// out[index[i]] += x[i]; out has num_rows rows.
Var scatter_add_rows(Var x, std::vector<int> index, std::size_t num_rows);
Var concat_cols(Var a, Var b);
Var select_cols(Var x, std::size_t begin, std::size_t count);
Var sum_all(Var x);
Var mean_all(Var x);

// Columns come in groups of three (lower, median, upper raw outputs); the
// result holds (m - softplus(lo), m, m + softplus(hi)) per group, so each
// group is nondecreasing.
Var ordered_quantiles(Var raw);

// mean((pred - target)^2). Throws kShapeMismatch.
Var mse_loss(Var pred, const Tensor &target);
// mean over elements of max(tau (y - p), (tau - 1)(y - p)). The subgradient
// at y == p is 0. Throws kTauOutOfRange unless 0 < tau < 1.
Var pinball_loss(Var pred, const Tensor &target, double tau);
// pred: n x (T * Q), target: n x T. Sum over targets t and quantiles q of
// pinball_loss(pred[:, t * Q + q], target[:, t], taus[q]).
Var multi_pinball_loss(Var pred, const Tensor &target,
                       const std::vector<double> &taus);

}  // namespace ccpred::nn

#endif  // CCPRED_GNN_TAPE_H_
