//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/gnn/params.h"

#include <cmath>

#include "ccpred/core/error.h"

namespace ccpred::nn {

Parameter &ParameterSet::add(std::string name, Tensor value) {
  if (index_.count(name) != 0)
    throw Error(ErrorCode::kInvalidArgument,
                "duplicate parameter name '" + name + "'");
  index_.emplace(name, params_.size());
  Tensor grad(value.rows(), value.cols());
  params_.push_back({ std::move(name), std::move(value), std::move(grad) });
  return params_.back();
}

Parameter &ParameterSet::add_xavier(std::string name, std::size_t rows,
                                    std::size_t cols, Rng &rng) {
  double a = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Tensor t(rows, cols);
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = rng.uniform(-a, a);
  return add(std::move(name), std::move(t));
}

Parameter &ParameterSet::add_zeros(std::string name, std::size_t rows,
                                   std::size_t cols) {
  return add(std::move(name), Tensor(rows, cols));
}

bool ParameterSet::contains(std::string_view name) const {
  return index_.find(name) != index_.end();
}

Parameter &ParameterSet::at(std::string_view name) {
  auto it = index_.find(name);
  if (it == index_.end())
    throw Error(ErrorCode::kInvalidArgument,
                "no parameter named '" + std::string(name) + "'");
  return params_[it->second];
}

const Parameter &ParameterSet::at(std::string_view name) const {
  return const_cast<ParameterSet *>(this)->at(name);
}

void ParameterSet::zero_grad() {
  for (Parameter &p: params_)
    p.grad.fill(0.0);
}

std::size_t ParameterSet::num_values() const {
  std::size_t n = 0;
  for (const Parameter &p: params_)
    n += p.value.size();
  return n;
}

}  // namespace ccpred::nn
