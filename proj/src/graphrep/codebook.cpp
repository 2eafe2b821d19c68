//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/graphrep/codebook.h"

#include <algorithm>

#include "ccpred/molparse/element.h"

namespace ccpred::graph {
namespace {

int clamp_code(int value, int cardinality) {
  return std::clamp(value, 0, cardinality - 1);
}

}  // namespace

const std::array<CategoricalField, kAtomFields> &atom_fields() {
  static const std::array<CategoricalField, kAtomFields> kFields = { {
    { "element", mol::kMaxAtomicNumber + 1 },
    { "chirality", 3 },
    { "degree", 7 },
    { "explicit_valence", 8 },
    { "formal_charge", 5 },
    { "hybridization", 4 },
    { "implicit_valence", 5 },
    { "aromatic", 2 },
    { "attached_h", 5 },
  } };
  return kFields;
}

const std::array<CategoricalField, kBondFields> &bond_fields() {
  static const std::array<CategoricalField, kBondFields> kFields = { {
    { "bond_direction", 3 },
    { "bond_type", 4 },
    { "in_ring", 2 },
  } };
  return kFields;
}

AtomCodes encode_atom(const mol::MolGraph &m, int atom) {
  const mol::Atom &a = m.atoms()[atom];
  const auto &f = atom_fields();
  int h = a.implicit_h;
  for (const mol::Neighbor &nb: m.neighbors(atom))
    h += m.atoms()[nb.atom].element == 1 ? 1 : 0;
  return {
    clamp_code(a.element, f[0].cardinality),
    clamp_code(static_cast<int>(a.chirality), f[1].cardinality),
    clamp_code(a.degree, f[2].cardinality),
    clamp_code(a.explicit_valence, f[3].cardinality),
    // -2..+2 maps to 0..4.
    clamp_code(a.formal_charge + 2, f[4].cardinality),
    clamp_code(static_cast<int>(a.hybridization), f[5].cardinality),
    clamp_code(a.implicit_valence, f[6].cardinality),
    a.aromatic ? 1 : 0,
    clamp_code(h, f[8].cardinality),
  };
}

BondCodes encode_bond(const mol::Bond &bond) {
  return {
    static_cast<int>(bond.direction),
    static_cast<int>(bond.order),
    bond.in_ring ? 1 : 0,
  };
}

int atom_onehot_width() {
  int w = 0;
  for (const auto &f: atom_fields())
    w += f.cardinality;
  return w;
}

int bond_onehot_width() {
  int w = 0;
  for (const auto &f: bond_fields())
    w += f.cardinality;
  return w;
}

void write_codebook(std::ostream &os) {
  os << "# version " << kCodebookVersion << '\n';
  os << "# kind,field,cardinality\n";
  for (const auto &f: atom_fields())
    os << "atom," << f.name << ',' << f.cardinality << '\n';
  for (const auto &f: bond_fields())
    os << "bond," << f.name << ',' << f.cardinality << '\n';
  os << "# element: atomic number\n"
        "# chirality: 0 none, 1 clockwise (@@), 2 counterclockwise (@)\n"
        "# formal_charge: charge + 2\n"
        "# hybridization: 0 sp, 1 sp2, 2 sp3, 3 other\n"
        "# bond_direction: 0 none, 1 up (/), 2 down (\\)\n"
        "# bond_type: 0 single, 1 double, 2 triple, 3 aromatic\n"
        "# values beyond the last code clamp to the last code\n";
}

}  // namespace ccpred::graph
