//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/chemfeat/geometry.h"

#include <numbers>

#include "ccpred/molparse/element.h"

namespace ccpred::chem {

double order_factor(mol::BondOrder order) {
  switch (order) {
  case mol::BondOrder::kSingle:
    return 1.00;
  case mol::BondOrder::kDouble:
    return 0.87;
  case mol::BondOrder::kTriple:
    return 0.78;
  case mol::BondOrder::kAromatic:
    return 0.93;
  }
  return 1.00;
}

double ideal_angle(mol::Hybridization hyb) {
  constexpr double kDeg = std::numbers::pi / 180.0;
  switch (hyb) {
  case mol::Hybridization::kSP:
    return std::numbers::pi;
  case mol::Hybridization::kSP2:
    return 120.0 * kDeg;
  default:
    return 109.47 * kDeg;
  }
}

Geometry idealized_geometry(const mol::MolGraph &m) {
  Geometry g;
  g.bond_lengths.reserve(m.num_bonds());
  for (const mol::Bond &b: m.bonds()) {
    double r = mol::element(m.atoms()[b.begin].element).covalent_radius
               + mol::element(m.atoms()[b.end].element).covalent_radius;
    g.bond_lengths.push_back(r * order_factor(b.order));
  }
  for (std::size_t i = 0; i < m.num_atoms(); ++i) {
    const auto &nbrs = m.neighbors(static_cast<int>(i));
    if (nbrs.size() < 2)
      continue;
    double angle = ideal_angle(m.atoms()[i].hybridization);
    for (const mol::Neighbor &a: nbrs) {
      for (const mol::Neighbor &b: nbrs) {
        if (a.bond != b.bond)
          g.bond_angles.push_back(
            {static_cast<int>(i), a.bond, b.bond, angle});
      }
    }
  }
  return g;
}

}  // namespace ccpred::chem
