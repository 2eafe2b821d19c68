//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/graphrep/graph_pair.h"

#include <algorithm>
#include <cstring>
#include <tuple>

#include "ccpred/core/error.h"

namespace ccpred::graph {
namespace {

class Fnv {
public:
  void bytes(const void *data, std::size_t n) {
    const auto *p = static_cast<const unsigned char *>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 1099511628211ULL;
    }
  }
  template <class T>
  void value(const T &v) {
    bytes(&v, sizeof(T));
  }
  std::uint64_t digest() const { return h_; }

private:
  std::uint64_t h_ = 14695981039346656037ULL;
};

}  // namespace

std::array<double, kGraphGEdgeWidth>
GraphG::edge_features(std::size_t edge) const {
  std::array<double, kGraphGEdgeWidth> out;
  for (std::size_t i = 0; i < kBondFields; ++i)
    out[i] = edge_bond_codes[edge][i];
  for (std::size_t i = 0; i < kConditionWidth; ++i)
    out[kBondFields + i] = conditions[i];
  return out;
}

std::array<double, kGraphHEdgeWidth>
GraphH::edge_features(std::size_t edge) const {
  std::array<double, kGraphHEdgeWidth> out;
  out[0] = angles[edge];
  for (std::size_t i = 0; i < chem::kNumDescriptors; ++i)
    out[1 + i] = descriptors[i];
  return out;
}

std::uint64_t GeoGraphPair::topology_digest() const {
  Fnv f;
  f.value(g.num_nodes());
  for (const AtomCodes &c: g.node_features)
    f.bytes(c.data(), sizeof(int) * c.size());
  f.value(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    f.value(g.edge_index[e]);
    f.bytes(g.edge_bond_codes[e].data(), sizeof(int) * kBondFields);
  }
  f.bytes(h.bond_lengths.data(), sizeof(double) * h.bond_lengths.size());
  f.value(h.num_edges());
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    f.value(h.edge_index[e]);
    f.value(h.angles[e]);
  }
  f.bytes(h.descriptors.data(), sizeof(double) * h.descriptors.size());
  return f.digest();
}

GeoGraphPair build_pair(const mol::MolGraph &m,
                        const chem::DescriptorVector &desc,
                        const chem::Geometry &geo,
                        const ExperimentalFeatures &exp) {
  if (m.num_bonds() == 0)
    throw Error(ErrorCode::kSingleAtomMolecule,
                "molecule has no bonds, so its bond-angle graph is empty");
  if (geo.bond_lengths.size() != m.num_bonds())
    throw Error(ErrorCode::kShapeMismatch,
                "geometry has " + std::to_string(geo.bond_lengths.size())
                  + " bond lengths for " + std::to_string(m.num_bonds())
                  + " bonds");

  const std::vector<int> &order = m.canonical_order();
  std::vector<int> rank(m.num_atoms());
  for (std::size_t i = 0; i < order.size(); ++i)
    rank[order[i]] = static_cast<int>(i);

  // Canonical bond order: by (low rank, high rank) of the endpoints.
  std::vector<int> bond_order(m.num_bonds());
  for (std::size_t b = 0; b < m.num_bonds(); ++b)
    bond_order[b] = static_cast<int>(b);
  auto bond_key = [&](int b) {
    int u = rank[m.bonds()[b].begin], v = rank[m.bonds()[b].end];
    return std::pair(std::min(u, v), std::max(u, v));
  };
  std::sort(bond_order.begin(), bond_order.end(),
            [&](int x, int y) { return bond_key(x) < bond_key(y); });
  std::vector<int> bond_rank(m.num_bonds());
  for (std::size_t k = 0; k < bond_order.size(); ++k)
    bond_rank[bond_order[k]] = static_cast<int>(k);

  GeoGraphPair pair;
  pair.codebook_version = std::string(kCodebookVersion);

  GraphG &g = pair.g;
  g.node_features.reserve(m.num_atoms());
  for (int atom: order)
    g.node_features.push_back(encode_atom(m, atom));
  g.edge_index.reserve(2 * m.num_bonds());
  for (int b: bond_order) {
    auto [u, v] = bond_key(b);
    BondCodes codes = encode_bond(m.bonds()[b]);
    g.edge_index.emplace_back(u, v);
    g.edge_index.emplace_back(v, u);
    g.edge_bond_codes.push_back(codes);
    g.edge_bond_codes.push_back(codes);
  }
  g.conditions = exp.flatten();

  GraphH &h = pair.h;
  h.bond_lengths.reserve(m.num_bonds());
  for (int b: bond_order)
    h.bond_lengths.push_back(geo.bond_lengths[b]);
  std::vector<std::tuple<int, int, int, double>> angles;
  angles.reserve(geo.bond_angles.size());
  for (const chem::BondAngle &a: geo.bond_angles) {
    if (a.center < 0 || a.center >= static_cast<int>(m.num_atoms())
        || a.bond_a < 0 || a.bond_a >= static_cast<int>(m.num_bonds())
        || a.bond_b < 0 || a.bond_b >= static_cast<int>(m.num_bonds()))
      throw Error(ErrorCode::kShapeMismatch, "angle refers to a missing bond");
    angles.emplace_back(rank[a.center], bond_rank[a.bond_a],
                        bond_rank[a.bond_b], a.radians);
  }
  std::sort(angles.begin(), angles.end());
  h.edge_index.reserve(angles.size());
  h.angles.reserve(angles.size());
  for (const auto &[center, a, b, rad]: angles) {
    h.edge_index.emplace_back(a, b);
    h.angles.push_back(rad);
  }
  h.descriptors = desc.values;

  pair.bond_map.resize(m.num_bonds());
  for (std::size_t k = 0; k < m.num_bonds(); ++k)
    pair.bond_map[k] = static_cast<int>(2 * k);
  return pair;
}

void set_conditions(GeoGraphPair &pair, const ExperimentalFeatures &exp) {
  pair.g.conditions = exp.flatten();
}

}  // namespace ccpred::graph
