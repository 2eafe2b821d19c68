//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/gnn/tensor.h"

#include <cmath>

#include <Eigen/Core>

#include "ccpred/core/error.h"

namespace ccpred::nn {
namespace {

using RowMajor =
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajor>;
using Map = Eigen::Map<RowMajor>;

ConstMap view(const Tensor &t) {
  return ConstMap(t.data(), static_cast<Eigen::Index>(t.rows()),
                  static_cast<Eigen::Index>(t.cols()));
}

Map view(Tensor &t) {
  return Map(t.data(), static_cast<Eigen::Index>(t.rows()),
             static_cast<Eigen::Index>(t.cols()));
}

[[noreturn]] void shape_error(const char *op, const Tensor &a,
                              const Tensor &b) {
  throw Error(ErrorCode::kShapeMismatch, std::string(op) + ": "
                                           + a.shape_string() + " vs "
                                           + b.shape_string());
}

}  // namespace

Tensor::Tensor(std::size_t rows, std::size_t cols, double fill)
  : rows_(rows), cols_(cols), data_(rows * cols, fill) { }

Tensor::Tensor(std::size_t rows, std::size_t cols, std::vector<double> values)
  : rows_(rows), cols_(cols), data_(std::move(values)) {
  if (data_.size() != rows * cols)
    throw Error(ErrorCode::kShapeMismatch,
                std::to_string(data_.size()) + " values for shape "
                  + shape_string());
}

std::string Tensor::shape_string() const {
  return "[" + std::to_string(rows_) + " x " + std::to_string(cols_) + "]";
}

double Tensor::item() const {
  if (rows_ != 1 || cols_ != 1)
    throw Error(ErrorCode::kShapeMismatch,
                "item() needs a 1 x 1 tensor, got " + shape_string());
  return data_[0];
}

bool Tensor::all_finite() const {
  for (double v: data_) {
    if (!std::isfinite(v))
      return false;
  }
  return true;
}

void Tensor::fill(double v) {
  std::fill(data_.begin(), data_.end(), v);
}

void Tensor::add_in_place(const Tensor &o) {
  if (!same_shape(o))
    shape_error("add", *this, o);
  for (std::size_t i = 0; i < data_.size(); ++i)
    data_[i] += o.data_[i];
}

Tensor matmul(const Tensor &a, const Tensor &b) {
  if (a.cols() != b.rows())
    shape_error("matmul", a, b);
  Tensor c(a.rows(), b.cols());
  if (a.size() != 0 && b.size() != 0)
    view(c).noalias() = view(a) * view(b);
  return c;
}

void matmul_nt_acc(const Tensor &a, const Tensor &b, Tensor &c) {
  if (a.cols() != b.cols() || c.rows() != a.rows() || c.cols() != b.rows())
    shape_error("matmul_nt", a, b);
  if (a.cols() != 0)
    view(c).noalias() += view(a) * view(b).transpose();
}

void matmul_tn_acc(const Tensor &a, const Tensor &b, Tensor &c) {
  if (a.rows() != b.rows() || c.rows() != a.cols() || c.cols() != b.cols())
    shape_error("matmul_tn", a, b);
  if (a.rows() != 0)
    view(c).noalias() += view(a).transpose() * view(b);
}

}  // namespace ccpred::nn
