//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Runs the library gin_layer and the dense oracle on the same inputs.

#ifndef CCPRED_TESTS_GIN_COMPARE_H_
#define CCPRED_TESTS_GIN_COMPARE_H_

#include <cmath>

#include "ccpred/gnn/gin.h"
#include "dense_gin.h"

namespace ccpred::testing {

inline nn::Tensor to_tensor(const Matrix &m) {
  nn::Tensor t(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[r].size(); ++c)
      t(r, c) = m[r][c];
  return t;
}

inline nn::Tensor row_tensor(const std::vector<double> &v) {
  return nn::Tensor(1, v.size(), v);
}

struct GinCase {
  Matrix h;                      // n x d
  std::vector<std::vector<int>> adjacency;   // [v][u]
  std::vector<std::vector<std::vector<double>>> edge_features;  // [u][v]
};

inline GinCase random_gin_case(Rng &rng, std::size_t n, std::size_t d,
                               std::size_t de,
                               const std::vector<std::vector<int>> &adj) {
  GinCase c;
  c.h = random_matrix(rng, n, d);
  c.adjacency = adj;
  c.edge_features.assign(n, std::vector<std::vector<double>>(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t j = 0; j < de; ++j)
        c.edge_features[u][v].push_back(rng.uniform(-1.0, 1.0));
  return c;
}

inline DenseGinParams random_gin_params(Rng &rng, std::size_t d,
                                        std::size_t de, std::size_t hidden,
                                        std::size_t out) {
  DenseGinParams p;
  p.we = random_matrix(rng, de, d);
  p.eps = rng.uniform(-0.5, 0.5);
  p.w1 = random_matrix(rng, d, hidden);
  p.b1 = random_matrix(rng, 1, hidden)[0];
  p.w2 = random_matrix(rng, hidden, out);
  p.b2 = random_matrix(rng, 1, out)[0];
  return p;
}

// Max |sparse - dense| over all outputs.
inline double gin_max_abs_diff(const GinCase &c, const DenseGinParams &p) {
  const std::size_t n = c.h.size();
  nn::EdgeList edges;
  Matrix ef;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < n; ++u)
      if (c.adjacency[v][u]) {
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        ef.push_back(c.edge_features[u][v]);
      }
  nn::Tape tape;
  nn::Var h = tape.constant(to_tensor(c.h));
  nn::Tensor eft(edges.size(), p.we.size());
  for (std::size_t e = 0; e < ef.size(); ++e)
    for (std::size_t j = 0; j < ef[e].size(); ++j)
      eft(e, j) = ef[e][j];
  nn::GinWeights w {
    tape.constant(to_tensor(p.we)),
    tape.constant(nn::Tensor::scalar(p.eps)),
    { tape.constant(to_tensor(p.w1)), tape.constant(row_tensor(p.b1)),
      tape.constant(to_tensor(p.w2)), tape.constant(row_tensor(p.b2)) },
  };
  nn::Var out = nn::gin_layer(h, edges, tape.constant(std::move(eft)), w);
  Matrix dense = dense_gin(c.h, c.adjacency, c.edge_features, p);
  double worst = 0.0;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t j = 0; j < dense[v].size(); ++j)
      worst = std::max(worst, std::abs(out.value()(v, j) - dense[v][j]));
  return worst;
}

}  // namespace ccpred::testing

#endif  // CCPRED_TESTS_GIN_COMPARE_H_
