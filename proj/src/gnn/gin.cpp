//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/gnn/gin.h"

#include "ccpred/core/error.h"

namespace ccpred::nn {

Var mlp2(Var x, const Mlp2 &mlp) {
  Var hidden = relu(add_bias(matmul(x, mlp.w1), mlp.b1));
  return add_bias(matmul(hidden, mlp.w2), mlp.b2);
}

Var gin_aggregate(Var h, const EdgeList &edges, Var edge_messages, Var eps) {
  const std::size_t n = h.value().rows();
  if (edge_messages.value().rows() != edges.size()
      || (!edges.empty() && edge_messages.value().cols() != h.value().cols()))
    throw Error(ErrorCode::kShapeMismatch,
                "gin: " + std::to_string(edges.size()) + " edges with messages "
                  + edge_messages.value().shape_string() + " for nodes "
                  + h.value().shape_string());
  std::vector<int> src, dst;
  src.reserve(edges.size());
  dst.reserve(edges.size());
  for (auto [u, v]: edges) {
    src.push_back(u);
    dst.push_back(v);
  }
  Var self = scale_one_plus(h, eps);
  if (edges.empty())
    return self;
  Var msg = relu(add(gather_rows(h, std::move(src)), edge_messages));
  return add(self, scatter_add_rows(msg, std::move(dst), n));
}

Var gin_layer(Var h, const EdgeList &edges, Var edge_features,
              const GinWeights &w) {
  if (edge_features.value().rows() != edges.size())
    throw Error(ErrorCode::kShapeMismatch,
                "gin: " + std::to_string(edges.size()) + " edges, "
                  + edge_features.value().shape_string() + " edge features");
  Var messages = matmul(edge_features, w.edge_proj);
  return mlp2(gin_aggregate(h, edges, messages, w.eps), w.mlp);
}

Var sum_pool(Var x, const std::vector<int> &assignment,
             std::size_t num_graphs) {
  return scatter_add_rows(x, assignment, num_graphs);
}

}  // namespace ccpred::nn
