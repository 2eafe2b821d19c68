//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_GNN_PARAMS_H_
#define CCPRED_GNN_PARAMS_H_

#include <cstddef>
#include <deque>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ccpred/core/rng.h"
#include "ccpred/gnn/tensor.h"

namespace ccpred::nn {

struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;  // same shape as value
};

// Named trainable tensors in insertion order. Element addresses are stable.
class ParameterSet {
public:
  // uniform(-a, a), a = sqrt(6 / (rows + cols)). Throws kInvalidArgument on a
  // duplicate name.
  Parameter &add_xavier(std::string name, std::size_t rows, std::size_t cols,
                        Rng &rng);
  Parameter &add_zeros(std::string name, std::size_t rows, std::size_t cols);
  Parameter &add(std::string name, Tensor value);

  std::size_t size() const { return params_.size(); }
  Parameter &operator[](std::size_t i) { return params_[i]; }
  const Parameter &operator[](std::size_t i) const { return params_[i]; }

  bool contains(std::string_view name) const;
  // Throws kInvalidArgument for a missing name.
  Parameter &at(std::string_view name);
  const Parameter &at(std::string_view name) const;

  void zero_grad();
  std::size_t num_values() const;

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

private:
  std::deque<Parameter> params_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace ccpred::nn

#endif  // CCPRED_GNN_PARAMS_H_
