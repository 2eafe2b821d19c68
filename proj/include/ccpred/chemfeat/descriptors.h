//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_CHEMFEAT_DESCRIPTORS_H_
#define CCPRED_CHEMFEAT_DESCRIPTORS_H_

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "ccpred/molparse/molecule.h"

namespace ccpred::chem {

enum class Provenance { kComputed, kInjected };

constexpr std::size_t kNumDescriptors = 16;
constexpr std::size_t kNumAuxDescriptors = 11;

// molwt, hbd, hba, logp, tpsa, then aux01..aux11.
const std::array<std::string_view, kNumDescriptors> &descriptor_names();

// Index of a descriptor name, or -1.
int descriptor_index(std::string_view name);

using DescriptorOverrides = std::map<std::string, double, std::less<>>;

struct DescriptorVector {
  std::array<double, kNumDescriptors> values {};
  std::array<Provenance, kNumDescriptors> provenance {};

  double molwt() const { return values[0]; }
  double hbd() const { return values[1]; }
  double hba() const { return values[2]; }
  double logp() const { return values[3]; }
  double tpsa() const { return values[4]; }
  double aux(std::size_t i) const { return values[5 + i]; }

  double get(std::string_view name) const;
  Provenance provenance_of(std::string_view name) const;

  bool operator==(const DescriptorVector &) const = default;
};

// molwt: atomic masses including implicit hydrogens.
// hbd: N/O atoms bearing at least one hydrogen.
// hba: N/O atoms that are not positively charged.
// tpsa: Ertl N/O fragment contributions (S and P contribute nothing).
// logp: coarse atom contributions, see logp_contribution().
// aux: zero unless injected.
//
// Throws kUnknownOverrideKey for an override outside descriptor_names().
DescriptorVector descriptor_vector(const mol::MolGraph &mol,
                                   const DescriptorOverrides &overrides = {});

double tpsa_contribution(const mol::MolGraph &mol, int atom);
double logp_contribution(const mol::Atom &atom);

}  // namespace ccpred::chem

#endif  // CCPRED_CHEMFEAT_DESCRIPTORS_H_
