//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_GRAPHREP_GRAPH_PAIR_H_
#define CCPRED_GRAPHREP_GRAPH_PAIR_H_

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ccpred/chemfeat/descriptors.h"
#include "ccpred/chemfeat/geometry.h"
#include "ccpred/graphrep/codebook.h"
#include "ccpred/graphrep/conditions.h"
#include "ccpred/molparse/molecule.h"

namespace ccpred::graph {

constexpr std::size_t kGraphGNodeWidth = kAtomFields;
constexpr std::size_t kGraphGEdgeWidth = kBondFields + kConditionWidth;
constexpr std::size_t kGraphHNodeWidth = 1;
constexpr std::size_t kGraphHEdgeWidth = 1 + chem::kNumDescriptors;

using EdgeIndex = std::vector<std::pair<int, int>>;  // (source, target)

// Atom-bond graph. Every bond appears as two directed edges, 2k (low to high
// atom index) and 2k+1 (high to low). Conditions are shared by all edges.
struct GraphG {
  std::vector<AtomCodes> node_features;
  EdgeIndex edge_index;
  std::vector<BondCodes> edge_bond_codes;
  std::array<double, kConditionWidth> conditions {};

  std::size_t num_nodes() const { return node_features.size(); }
  std::size_t num_edges() const { return edge_index.size(); }
  std::array<double, kGraphGEdgeWidth> edge_features(std::size_t edge) const;

  bool operator==(const GraphG &) const = default;
};

// Bond-angle graph. Node k is bond k of GraphG; edge (a, b) is the angle from
// bond a into bond b. Descriptors are shared by all edges.
struct GraphH {
  std::vector<double> bond_lengths;
  EdgeIndex edge_index;
  std::vector<double> angles;
  std::array<double, chem::kNumDescriptors> descriptors {};

  std::size_t num_nodes() const { return bond_lengths.size(); }
  std::size_t num_edges() const { return edge_index.size(); }
  std::array<double, kGraphHEdgeWidth> edge_features(std::size_t edge) const;

  bool operator==(const GraphH &) const = default;
};

struct GeoGraphPair {
  GraphG g;
  GraphH h;
  // GraphH node k -> the GraphG directed edge bond_map[k]; its reverse is
  // bond_map[k] + 1.
  std::vector<int> bond_map;
  std::string codebook_version;

  // Hash of everything except the experimental conditions; equal for two
  // experiments on the same molecule.
  std::uint64_t topology_digest() const;

  bool operator==(const GeoGraphPair &) const = default;
};

// Atoms and bonds are emitted in canonical order, so relabeled inputs give
// identical pairs.
//
// Throws kSingleAtomMolecule when the molecule has no bonds, kShapeMismatch
// when geo was not computed from mol.
GeoGraphPair build_pair(const mol::MolGraph &mol,
                        const chem::DescriptorVector &desc,
                        const chem::Geometry &geo,
                        const ExperimentalFeatures &exp);

// Replaces the shared condition block, keeping topology.
void set_conditions(GeoGraphPair &pair, const ExperimentalFeatures &exp);

}  // namespace ccpred::graph

#endif  // CCPRED_GRAPHREP_GRAPH_PAIR_H_
