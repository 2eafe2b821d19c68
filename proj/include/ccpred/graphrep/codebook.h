//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_GRAPHREP_CODEBOOK_H_
#define CCPRED_GRAPHREP_CODEBOOK_H_

#include <array>
#include <cstddef>
#include <ostream>
#include <string_view>

#include "ccpred/molparse/molecule.h"

namespace ccpred::graph {

// Bump whenever a cardinality or an encoding rule below changes; checkpoints
// record it.
constexpr std::string_view kCodebookVersion = "ccpred-codebook-1";

constexpr std::size_t kAtomFields = 9;
constexpr std::size_t kBondFields = 3;

struct CategoricalField {
  std::string_view name;
  int cardinality;  // codes are 0..cardinality-1; overflow clamps to the top
};

// element, chirality, degree, explicit_valence, formal_charge, hybridization,
// implicit_valence, aromatic, attached_h.
const std::array<CategoricalField, kAtomFields> &atom_fields();
// bond_direction, bond_type, in_ring.
const std::array<CategoricalField, kBondFields> &bond_fields();

using AtomCodes = std::array<int, kAtomFields>;
using BondCodes = std::array<int, kBondFields>;

// attached_h counts implicit hydrogens plus explicit [H] neighbours.
AtomCodes encode_atom(const mol::MolGraph &mol, int atom);
BondCodes encode_bond(const mol::Bond &bond);

// Sum of cardinalities; the width of a one-hot atom or bond encoding.
int atom_onehot_width();
int bond_onehot_width();

// Same text as data/codebook.txt.
void write_codebook(std::ostream &os);

}  // namespace ccpred::graph

#endif  // CCPRED_GRAPHREP_CODEBOOK_H_
