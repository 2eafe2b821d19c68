//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_MOLPARSE_ELEMENT_H_
#define CCPRED_MOLPARSE_ELEMENT_H_

#include <span>
#include <string_view>

namespace ccpred::mol {

struct Element {
  int atomic_number;
  std::string_view symbol;
  double mass;              // standard atomic weight, g/mol
  double covalent_radius;   // single-bond radius, angstrom
  std::span<const int> default_valences;  // ascending; empty if none
};

constexpr int kMaxAtomicNumber = 54;

// Returns nullptr for unknown symbols. Case-sensitive ("Cl", not "CL").
const Element *find_element(std::string_view symbol);

// Valid for 1..kMaxAtomicNumber.
const Element &element(int atomic_number);

constexpr double kHydrogenMass = 1.008;

}  // namespace ccpred::mol

#endif  // CCPRED_MOLPARSE_ELEMENT_H_
