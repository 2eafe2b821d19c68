//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_GNN_TENSOR_H_
#define CCPRED_GNN_TENSOR_H_

#include <cstddef>
#include <string>
#include <vector>

namespace ccpred::nn {

// Dense row-major matrix of doubles. Vectors are 1 x n or n x 1; scalars are
// 1 x 1.
class Tensor {
public:
  Tensor() = default;
  Tensor(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Throws kShapeMismatch unless values.size() == rows * cols.
  Tensor(std::size_t rows, std::size_t cols, std::vector<double> values);

  static Tensor scalar(double v) { return Tensor(1, 1, v); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  std::vector<std::size_t> shape() const { return { rows_, cols_ }; }
  bool same_shape(const Tensor &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }
  std::string shape_string() const;

  double &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  double &operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double *data() { return data_.data(); }
  const double *data() const { return data_.data(); }
  double *row(std::size_t r) { return data_.data() + r * cols_; }
  const double *row(std::size_t r) const { return data_.data() + r * cols_; }
  const std::vector<double> &values() const { return data_; }

  // Throws kShapeMismatch unless 1 x 1.
  double item() const;
  bool all_finite() const;
  void fill(double v);
  // this += o; shapes must match.
  void add_in_place(const Tensor &o);

  bool operator==(const Tensor &) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// c = a * b.
Tensor matmul(const Tensor &a, const Tensor &b);
// c += a * b^T and c += a^T * b.
void matmul_nt_acc(const Tensor &a, const Tensor &b, Tensor &c);
void matmul_tn_acc(const Tensor &a, const Tensor &b, Tensor &c);

}  // namespace ccpred::nn

#endif  // CCPRED_GNN_TENSOR_H_
