//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_MOLPARSE_SMILES_H_
#define CCPRED_MOLPARSE_SMILES_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ccpred/molparse/molecule.h"

namespace ccpred::mol {

// Parses the common organic SMILES subset: organic-subset and bracket atoms,
// ring closures (digits and %nn), branches, - = # : / \ bonds, '.'
// components, lowercase aromatic atoms, charges and tetrahedral @/@@.
// Isotopes are dropped with a warning on the returned graph.
//
// Throws SmilesError with kSyntaxError for malformed input and
// kUnsupportedFeature for valid SMILES outside the subset.
MolGraph parse_smiles(std::string_view text);

// Reads one SMILES per line; blank lines and '#' comments are skipped and
// anything after the first whitespace on a line is treated as a title.
std::vector<std::string> read_smiles_lines(std::istream &is);

// Human-readable atom/bond/ring listing for debugging.
void dump_molecule(std::ostream &os, const MolGraph &mol);

}  // namespace ccpred::mol

#endif  // CCPRED_MOLPARSE_SMILES_H_
