//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/gnn/tape.h"

#include <algorithm>
#include <cmath>
#include <memory>

#include "ccpred/core/error.h"

namespace ccpred::nn {
namespace {

Tape &tape_of(std::initializer_list<Var> vars) {
  Tape *t = vars.begin()->tape;
  for (const Var &v: vars) {
    if (v.tape == nullptr || v.tape != t)
      throw Error(ErrorCode::kInvalidArgument,
                  "operands must be recorded on the same tape");
  }
  return *t;
}

[[noreturn]] void shape_error(const char *op, const Tensor &a,
                              const Tensor &b) {
  throw Error(ErrorCode::kShapeMismatch, std::string(op) + ": "
                                           + a.shape_string() + " vs "
                                           + b.shape_string());
}

double sigmoid(double x) {
  if (x >= 0.0)
    return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double softplus_value(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

void check_index(const std::vector<int> &index, std::size_t bound,
                 const char *op) {
  for (int i: index) {
    if (i < 0 || static_cast<std::size_t>(i) >= bound)
      throw Error(ErrorCode::kShapeMismatch,
                  std::string(op) + ": row index " + std::to_string(i)
                    + " outside [0, " + std::to_string(bound) + ")");
  }
}

}  // namespace

const Tensor &Var::value() const {
  return tape->value(id);
}

Var Tape::constant(Tensor value) {
  return record(std::move(value), {}, nullptr);
}

Var Tape::reference(const Tensor &value) {
  if (consumed_)
    throw Error(ErrorCode::kInvalidArgument, "tape already differentiated");
  if (!value.all_finite())
    throw Error(ErrorCode::kNonFinite, "constant holds a non-finite value");
  Node n;
  n.ref = &value;
  nodes_.push_back(std::move(n));
  return { this, static_cast<int>(nodes_.size() - 1) };
}

Var Tape::parameter(Parameter &p) {
  if (!p.value.all_finite())
    throw Error(ErrorCode::kNonFinite,
                "parameter '" + p.name + "' holds a non-finite value");
  Node n;
  n.ref = &p.value;
  if (grad_enabled_) {
    n.param_grad = &p.grad;
    n.requires_grad = true;
  }
  nodes_.push_back(std::move(n));
  return { this, static_cast<int>(nodes_.size() - 1) };
}

Var Tape::record(Tensor value, std::initializer_list<Var> inputs,
                 BackwardFn backward) {
  if (consumed_)
    throw Error(ErrorCode::kInvalidArgument, "tape already differentiated");
  if (!value.all_finite())
    throw Error(ErrorCode::kNonFinite,
                "operation produced a non-finite value");
  if (inputs.size() > 3)
    throw Error(ErrorCode::kInvalidArgument, "at most three inputs per node");
  Node n;
  n.value = std::move(value);
  std::size_t k = 0;
  for (const Var &v: inputs) {
    if (v.tape != this)
      throw Error(ErrorCode::kInvalidArgument,
                  "operands must be recorded on the same tape");
    n.inputs[k++] = v.id;
    n.requires_grad = n.requires_grad || nodes_[v.id].requires_grad;
  }
  if (n.requires_grad)
    n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return { this, static_cast<int>(nodes_.size() - 1) };
}

const Tensor &Tape::value(int id) const {
  if (consumed_)
    throw Error(ErrorCode::kInvalidArgument,
                "tape values are released by backward()");
  const Node &n = nodes_[id];
  return n.ref != nullptr ? *n.ref : n.value;
}

Tensor &Tape::grad(int id) {
  Node &n = nodes_[id];
  if (!n.has_grad) {
    const Tensor &v = n.ref != nullptr ? *n.ref : n.value;
    n.grad = Tensor(v.rows(), v.cols());
    n.has_grad = true;
  }
  return n.grad;
}

void Tape::backward(Var loss) {
  if (consumed_)
    throw Error(ErrorCode::kInvalidArgument, "tape already differentiated");
  if (loss.tape != this)
    throw Error(ErrorCode::kInvalidArgument, "loss is not on this tape");
  const Tensor &lv = value(loss.id);
  if (lv.rows() != 1 || lv.cols() != 1)
    throw Error(ErrorCode::kShapeMismatch,
                "backward needs a scalar loss, got " + lv.shape_string());
  grad(loss.id)[0] = 1.0;

  for (int id = loss.id; id >= 0; --id) {
    Node &n = nodes_[id];
    for (int in: n.inputs) {
      if (in >= id)
        throw Error(ErrorCode::kGraphCycle,
                    "node " + std::to_string(id) + " depends on node "
                      + std::to_string(in));
    }
    if (n.requires_grad && n.has_grad) {
      if (n.param_grad != nullptr)
        n.param_grad->add_in_place(n.grad);
      else if (n.backward)
        n.backward(*this, id);
    }
    n.grad = Tensor();
    n.has_grad = false;
    if (n.ref == nullptr)
      n.value = Tensor();
    n.backward = nullptr;
  }
  consumed_ = true;
}

Var matmul(Var a, Var b) {
  Tape &t = tape_of({ a, b });
  Tensor out = nn::matmul(a.value(), b.value());
  return t.record(std::move(out), { a, b }, [a, b](Tape &tp, int self) {
    const Tensor &g = tp.grad(self);
    if (tp.requires_grad(a.id))
      matmul_nt_acc(g, tp.value(b.id), tp.grad(a.id));
    if (tp.requires_grad(b.id))
      matmul_tn_acc(tp.value(a.id), g, tp.grad(b.id));
  });
}

Var add(Var a, Var b) {
  Tape &t = tape_of({ a, b });
  if (!a.value().same_shape(b.value()))
    shape_error("add", a.value(), b.value());
  Tensor out = a.value();
  out.add_in_place(b.value());
  return t.record(std::move(out), { a, b }, [a, b](Tape &tp, int self) {
    const Tensor &g = tp.grad(self);
    if (tp.requires_grad(a.id))
      tp.grad(a.id).add_in_place(g);
    if (tp.requires_grad(b.id))
      tp.grad(b.id).add_in_place(g);
  });
}

Var sub(Var a, Var b) {
  Tape &t = tape_of({ a, b });
  const Tensor &av = a.value(), &bv = b.value();
  if (!av.same_shape(bv))
    shape_error("sub", av, bv);
  Tensor out = av;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] -= bv[i];
  return t.record(std::move(out), { a, b }, [a, b](Tape &tp, int self) {
    const Tensor &g = tp.grad(self);
    if (tp.requires_grad(a.id))
      tp.grad(a.id).add_in_place(g);
    if (tp.requires_grad(b.id)) {
      Tensor &gb = tp.grad(b.id);
      for (std::size_t i = 0; i < g.size(); ++i)
        gb[i] -= g[i];
    }
  });
}

Var add_bias(Var x, Var bias) {
  Tape &t = tape_of({ x, bias });
  const Tensor &xv = x.value(), &bv = bias.value();
  if (bv.rows() != 1 || bv.cols() != xv.cols())
    shape_error("add_bias", xv, bv);
  Tensor out = xv;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    double *row = out.row(r);
    for (std::size_t c = 0; c < out.cols(); ++c)
      row[c] += bv[c];
  }
  return t.record(std::move(out), { x, bias },
                  [x, bias](Tape &tp, int self) {
    const Tensor &g = tp.grad(self);
    if (tp.requires_grad(x.id))
      tp.grad(x.id).add_in_place(g);
    if (tp.requires_grad(bias.id)) {
      Tensor &gb = tp.grad(bias.id);
      for (std::size_t r = 0; r < g.rows(); ++r) {
        const double *row = g.row(r);
        for (std::size_t c = 0; c < g.cols(); ++c)
          gb[c] += row[c];
      }
    }
  });
}

Var leaky_relu(Var x, double slope) {
  Tape &t = tape_of({ x });
  Tensor out = x.value();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 0.0)
      out[i] *= slope;
  }
  return t.record(std::move(out), { x }, [x, slope](Tape &tp, int self) {
    const Tensor &g = tp.grad(self);
    const Tensor &xv = tp.value(x.id);
    Tensor &gx = tp.grad(x.id);
    for (std::size_t i = 0; i < g.size(); ++i)
      gx[i] += xv[i] > 0.0 ? g[i] : slope * g[i];
  });
}

Var relu(Var x) {
  return leaky_relu(x, 0.0);
}

Var softplus(Var x) {
  Tape &t = tape_of({ x });
  Tensor out = x.value();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = softplus_value(out[i]);
  return t.record(std::move(out), { x }, [x](Tape &tp, int self) {
    const Tensor &g = tp.grad(self);
    const Tensor &xv = tp.value(x.id);
    Tensor &gx = tp.grad(x.id);
    for (std::size_t i = 0; i < g.size(); ++i)
      gx[i] += g[i] * sigmoid(xv[i]);
  });
}

Var scale(Var x, double c) {
  Tape &t = tape_of({ x });
  Tensor out = x.value();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] *= c;
  return t.record(std::move(out), { x }, [x, c](Tape &tp, int self) {
    const Tensor &g = tp.grad(self);
    Tensor &gx = tp.grad(x.id);
    for (std::size_t i = 0; i < g.size(); ++i)
      gx[i] += c * g[i];
  });
}

Var scale_one_plus(Var x, Var eps) {
  Tape &t = tape_of({ x, eps });
  const Tensor &ev = eps.value();
  if (ev.rows() != 1 || ev.cols() != 1)
    shape_error("scale_one_plus", x.value(), ev);
  double k = 1.0 + ev[0];
  Tensor out = x.value();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] *= k;
  return t.record(std::move(out), { x, eps }, [x, eps](Tape &tp, int self) {
    const Tensor &g = tp.grad(self);
    const Tensor &xv = tp.value(x.id);
    double k = 1.0 + tp.value(eps.id)[0];
    if (tp.requires_grad(x.id)) {
      Tensor &gx = tp.grad(x.id);
      for (std::size_t i = 0; i < g.size(); ++i)
        gx[i] += k * g[i];
    }
    if (tp.requires_grad(eps.id)) {
      double s = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i)
        s += g[i] * xv[i];
      tp.grad(eps.id)[0] += s;
    }
  });
}

Var gather_rows(Var x, std::vector<int> index) {
  Tape &t = tape_of({ x });
  const Tensor &xv = x.value();
  check_index(index, xv.rows(), "gather_rows");
  const std::size_t w = xv.cols();
  Tensor out(index.size(), w);
  for (std::size_t i = 0; i < index.size(); ++i)
    std::copy_n(xv.row(index[i]), w, out.row(i));
  auto idx = std::make_shared<std::vector<int>>(std::move(index));
  return t.record(std::move(out), { x }, [x, idx](Tape &tp, int self) {
    const Tensor &g = tp.grad(self);
    Tensor &gx = tp.grad(x.id);
    const std::size_t w = g.cols();
    for (std::size_t i = 0; i < idx->size(); ++i) {
      const double *src = g.row(i);
      double *dst = gx.row((*idx)[i]);
      for (std::size_t c = 0; c < w; ++c)
        dst[c] += src[c];
    }
  });
}

Var scatter_add_rows(Var x, std::vector<int> index, std::size_t num_rows) {
  Tape &t = tape_of({ x });
  const Tensor &xv = x.value();
  if (index.size() != xv.rows())
    throw Error(ErrorCode::kShapeMismatch,
                "scatter_add_rows: " + std::to_string(index.size())
                  + " indices for " + xv.shape_string());
  check_index(index, num_rows, "scatter_add_rows");
  const std::size_t w = xv.cols();
  Tensor out(num_rows, w);
  for (std::size_t i = 0; i < index.size(); ++i) {
    const double *src = xv.row(i);
    double *dst = out.row(index[i]);
    for (std::size_t c = 0; c < w; ++c)
      dst[c] += src[c];
  }
  auto idx = std::make_shared<std::vector<int>>(std::move(index));
  return t.record(std::move(out), { x }, [x, idx](Tape &tp, int self) {
    const Tensor &g = tp.grad(self);
    Tensor &gx = tp.grad(x.id);
    const std::size_t w = g.cols();
    for (std::size_t i = 0; i < idx->size(); ++i) {
      const double *src = g.row((*idx)[i]);
      double *dst = gx.row(i);
      for (std::size_t c = 0; c < w; ++c)
        dst[c] += src[c];
    }
  });
}

Var concat_cols(Var a, Var b) {
  Tape &t = tape_of({ a, b });
  const Tensor &av = a.value(), &bv = b.value();
  if (av.rows() != bv.rows())
    shape_error("concat_cols", av, bv);
  const std::size_t wa = av.cols(), wb = bv.cols();
  Tensor out(av.rows(), wa + wb);
  for (std::size_t r = 0; r < av.rows(); ++r) {
    std::copy_n(av.row(r), wa, out.row(r));
    std::copy_n(bv.row(r), wb, out.row(r) + wa);
  }
  return t.record(std::move(out), { a, b }, [a, b, wa, wb](Tape &tp, int self) {
    const Tensor &g = tp.grad(self);
    if (tp.requires_grad(a.id)) {
      Tensor &ga = tp.grad(a.id);
      for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < wa; ++c)
          ga(r, c) += g(r, c);
      }
    }
    if (tp.requires_grad(b.id)) {
      Tensor &gb = tp.grad(b.id);
      for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < wb; ++c)
          gb(r, c) += g(r, wa + c);
      }
    }
  });
}

Var select_cols(Var x, std::size_t begin, std::size_t count) {
  Tape &t = tape_of({ x });
  const Tensor &xv = x.value();
  if (begin + count > xv.cols())
    throw Error(ErrorCode::kShapeMismatch,
                "select_cols: columns [" + std::to_string(begin) + ", "
                  + std::to_string(begin + count) + ") of "
                  + xv.shape_string());
  Tensor out(xv.rows(), count);
  for (std::size_t r = 0; r < xv.rows(); ++r)
    std::copy_n(xv.row(r) + begin, count, out.row(r));
  return t.record(std::move(out), { x }, [x, begin](Tape &tp, int self) {
    const Tensor &g = tp.grad(self);
    Tensor &gx = tp.grad(x.id);
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t c = 0; c < g.cols(); ++c)
        gx(r, begin + c) += g(r, c);
    }
  });
}

Var sum_all(Var x) {
  Tape &t = tape_of({ x });
  double s = 0.0;
  for (double v: x.value().values())
    s += v;
  return t.record(Tensor::scalar(s), { x }, [x](Tape &tp, int self) {
    double g = tp.grad(self)[0];
    Tensor &gx = tp.grad(x.id);
    for (std::size_t i = 0; i < gx.size(); ++i)
      gx[i] += g;
  });
}

Var mean_all(Var x) {
  std::size_t n = x.value().size();
  if (n == 0)
    throw Error(ErrorCode::kShapeMismatch, "mean of an empty tensor");
  return scale(sum_all(x), 1.0 / static_cast<double>(n));
}

Var ordered_quantiles(Var raw) {
  Tape &t = tape_of({ raw });
  const Tensor &rv = raw.value();
  if (rv.cols() % 3 != 0)
    throw Error(ErrorCode::kShapeMismatch,
                "ordered_quantiles needs groups of 3 columns, got "
                  + rv.shape_string());
  Tensor out(rv.rows(), rv.cols());
  for (std::size_t r = 0; r < rv.rows(); ++r) {
    for (std::size_t c = 0; c < rv.cols(); c += 3) {
      double m = rv(r, c + 1);
      out(r, c) = m - softplus_value(rv(r, c));
      out(r, c + 1) = m;
      out(r, c + 2) = m + softplus_value(rv(r, c + 2));
    }
  }
  return t.record(std::move(out), { raw }, [raw](Tape &tp, int self) {
    const Tensor &g = tp.grad(self);
    const Tensor &rv = tp.value(raw.id);
    Tensor &gr = tp.grad(raw.id);
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t c = 0; c < g.cols(); c += 3) {
        gr(r, c) -= g(r, c) * sigmoid(rv(r, c));
        gr(r, c + 1) += g(r, c) + g(r, c + 1) + g(r, c + 2);
        gr(r, c + 2) += g(r, c + 2) * sigmoid(rv(r, c + 2));
      }
    }
  });
}

Var mse_loss(Var pred, const Tensor &target) {
  Tape &t = tape_of({ pred });
  const Tensor &pv = pred.value();
  if (!pv.same_shape(target))
    shape_error("mse_loss", pv, target);
  if (pv.size() == 0)
    throw Error(ErrorCode::kShapeMismatch, "mse_loss of empty tensors");
  const double n = static_cast<double>(pv.size());
  double s = 0.0;
  for (std::size_t i = 0; i < pv.size(); ++i) {
    double d = pv[i] - target[i];
    s += d * d;
  }
  auto tgt = std::make_shared<Tensor>(target);
  return t.record(Tensor::scalar(s / n), { pred },
                  [pred, tgt, n](Tape &tp, int self) {
    double g = tp.grad(self)[0];
    const Tensor &pv = tp.value(pred.id);
    Tensor &gp = tp.grad(pred.id);
    for (std::size_t i = 0; i < pv.size(); ++i)
      gp[i] += g * 2.0 * (pv[i] - (*tgt)[i]) / n;
  });
}

Var multi_pinball_loss(Var pred, const Tensor &target,
                       const std::vector<double> &taus) {
  Tape &t = tape_of({ pred });
  const Tensor &pv = pred.value();
  for (double tau: taus) {
    if (!(tau > 0.0 && tau < 1.0))
      throw Error(ErrorCode::kTauOutOfRange,
                  "quantile level must lie in (0, 1), got "
                    + std::to_string(tau));
  }
  const std::size_t q = taus.size();
  if (q == 0 || pv.rows() != target.rows() || pv.cols() != target.cols() * q)
    shape_error("pinball_loss", pv, target);
  if (pv.rows() == 0)
    throw Error(ErrorCode::kShapeMismatch, "pinball_loss of empty tensors");
  const double n = static_cast<double>(pv.rows());
  double s = 0.0;
  for (std::size_t r = 0; r < pv.rows(); ++r) {
    for (std::size_t c = 0; c < pv.cols(); ++c) {
      double tau = taus[c % q];
      double u = target(r, c / q) - pv(r, c);
      s += std::max(tau * u, (tau - 1.0) * u);
    }
  }
  auto tgt = std::make_shared<Tensor>(target);
  auto tv = std::make_shared<std::vector<double>>(taus);
  return t.record(Tensor::scalar(s / n), { pred },
                  [pred, tgt, tv, n](Tape &tp, int self) {
    double g = tp.grad(self)[0];
    const Tensor &pv = tp.value(pred.id);
    Tensor &gp = tp.grad(pred.id);
    const std::size_t q = tv->size();
    for (std::size_t r = 0; r < pv.rows(); ++r) {
      for (std::size_t c = 0; c < pv.cols(); ++c) {
        double tau = (*tv)[c % q];
        double u = (*tgt)(r, c / q) - pv(r, c);
        if (u > 0.0)
          gp(r, c) -= g * tau / n;
        else if (u < 0.0)
          gp(r, c) += g * (1.0 - tau) / n;
      }
    }
  });
}

Var pinball_loss(Var pred, const Tensor &target, double tau) {
  if (!pred.value().same_shape(target))
    shape_error("pinball_loss", pred.value(), target);
  if (!(tau > 0.0 && tau < 1.0))
    throw Error(ErrorCode::kTauOutOfRange,
                "quantile level must lie in (0, 1), got "
                  + std::to_string(tau));
  // Elementwise mean: every column is its own target.
  double cols = static_cast<double>(std::max<std::size_t>(1, target.cols()));
  return scale(multi_pinball_loss(pred, target, { tau }), 1.0 / cols);
}

}  // namespace ccpred::nn
