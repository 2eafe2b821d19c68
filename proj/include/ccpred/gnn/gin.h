//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_GNN_GIN_H_
#define CCPRED_GNN_GIN_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "ccpred/gnn/tape.h"

namespace ccpred::nn {

using EdgeList = std::vector<std::pair<int, int>>;  // (source, target)

// Linear, relu, linear.
struct Mlp2 {
  Var w1, b1, w2, b2;
};

Var mlp2(Var x, const Mlp2 &mlp);

struct GinWeights {
  Var edge_proj;  // edge width x node width
  Var eps;        // 1 x 1
  Mlp2 mlp;
};

// (1 + eps) h_v + sum over edges u -> v of relu(h_u + m_uv), where m holds one
// precomputed message row per edge.
Var gin_aggregate(Var h, const EdgeList &edges, Var edge_messages, Var eps);

// mlp((1 + eps) h_v + sum over u -> v of relu(h_u + e_uv W_e)).
//
// Throws kShapeMismatch.
Var gin_layer(Var h, const EdgeList &edges, Var edge_features,
              const GinWeights &w);

// Row sums per graph id; graphs without nodes pool to zero.
//
// Throws kShapeMismatch unless every id lies in [0, num_graphs).
Var sum_pool(Var x, const std::vector<int> &assignment,
             std::size_t num_graphs);

}  // namespace ccpred::nn

#endif  // CCPRED_GNN_GIN_H_
