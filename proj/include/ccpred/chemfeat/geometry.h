//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_CHEMFEAT_GEOMETRY_H_
#define CCPRED_CHEMFEAT_GEOMETRY_H_

#include <vector>

#include "ccpred/molparse/molecule.h"

namespace ccpred::chem {

struct BondAngle {
  int center;   // shared atom
  int bond_a;   // incoming bond
  int bond_b;   // outgoing bond, != bond_a
  double radians;
};

struct Geometry {
  std::vector<double> bond_lengths;  // angstrom, indexed like mol.bonds()
  // One entry per ordered pair of distinct bonds sharing an atom, grouped by
  // center atom in index order.
  std::vector<BondAngle> bond_angles;
};

double order_factor(mol::BondOrder order);

// Radians; kOther falls back to tetrahedral.
double ideal_angle(mol::Hybridization hyb);

Geometry idealized_geometry(const mol::MolGraph &mol);

}  // namespace ccpred::chem

#endif  // CCPRED_CHEMFEAT_GEOMETRY_H_
