//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/chemfeat/descriptors.h"

#include <algorithm>
#include <vector>

#include "ccpred/core/error.h"
#include "ccpred/molparse/element.h"

namespace ccpred::chem {
namespace {

struct Environment {
  int heavy = 0;
  int singles = 0;
  int doubles = 0;
  int triples = 0;
  int aromatic = 0;
  int hydrogens = 0;
  bool in_three_ring = false;
};

Environment environment_of(const mol::MolGraph &m, int atom) {
  Environment env;
  env.hydrogens = m.atoms()[atom].implicit_h;
  for (const mol::Neighbor &nb: m.neighbors(atom)) {
    if (m.atoms()[nb.atom].element == 1) {
      ++env.hydrogens;
      continue;
    }
    ++env.heavy;
    switch (m.bonds()[nb.bond].order) {
    case mol::BondOrder::kSingle:
      ++env.singles;
      break;
    case mol::BondOrder::kDouble:
      ++env.doubles;
      break;
    case mol::BondOrder::kTriple:
      ++env.triples;
      break;
    case mol::BondOrder::kAromatic:
      ++env.aromatic;
      break;
    }
  }
  for (const mol::Ring &r: m.rings()) {
    if (r.atoms.size() == 3
        && std::find(r.atoms.begin(), r.atoms.end(), atom) != r.atoms.end())
      env.in_three_ring = true;
  }
  return env;
}

double nitrogen_contribution(const mol::Atom &a, const Environment &e) {
  const int n = e.heavy;
  if (a.formal_charge == 0 && !a.aromatic) {
    switch (e.hydrogens) {
    case 0:
      if (n == 1 && e.triples == 1)
        return 23.79;
      if (n == 2 && e.singles == 1 && e.doubles == 1)
        return 12.36;
      if (n == 2 && (e.doubles == 2 || (e.singles == 1 && e.triples == 1)))
        return 13.60;
      if (n == 3 && e.singles == 3)
        return e.in_three_ring ? 3.01 : 3.24;
      if (n == 3 && e.singles == 1 && e.doubles == 2)
        return 11.68;
      break;
    case 1:
      if (n == 1 && e.doubles == 1)
        return 23.85;
      if (n == 2 && e.singles == 2)
        return e.in_three_ring ? 21.94 : 12.03;
      break;
    case 2:
      if (n == 1 && e.singles == 1)
        return 26.02;
      break;
    default:
      break;
    }
  } else if (a.formal_charge == 0 && a.aromatic) {
    if (e.hydrogens == 0) {
      if (n == 2 && e.aromatic == 2)
        return 12.89;
      if (n == 3 && e.aromatic == 3)
        return 4.41;
      if (n == 3 && e.singles == 1 && e.aromatic == 2)
        return 4.93;
      if (n == 3 && e.doubles == 1 && e.aromatic == 2)
        return 8.39;
    } else if (e.hydrogens == 1 && n == 2 && e.aromatic == 2) {
      return 15.79;
    }
  } else if (a.formal_charge == 1 && !a.aromatic) {
    switch (e.hydrogens) {
    case 0:
      if (n == 2 && e.singles == 1 && e.triples == 1)
        return 4.36;
      if (n == 3 && e.singles == 2 && e.doubles == 1)
        return 3.01;
      if (n == 4 && e.singles == 4)
        return 0.00;
      break;
    case 1:
      if (n == 3 && e.singles == 3)
        return 4.44;
      if (n == 2 && e.singles == 1 && e.doubles == 1)
        return 13.97;
      break;
    case 2:
      if (n == 2 && e.singles == 2)
        return 16.61;
      if (n == 1 && e.doubles == 1)
        return 25.59;
      break;
    case 3:
      if (n == 1 && e.singles == 1)
        return 27.64;
      break;
    default:
      break;
    }
  } else if (a.formal_charge == 1 && a.aromatic) {
    if (e.hydrogens == 0 && n == 3 && e.aromatic == 3)
      return 4.10;
    if (e.hydrogens == 0 && n == 3 && e.singles == 1 && e.aromatic == 2)
      return 3.88;
    if (e.hydrogens == 1 && n == 2 && e.aromatic == 2)
      return 14.14;
  }
  // Unlisted environments use the generic Ertl-style estimate.
  return std::max(0.0, 30.5 - 8.2 * n + 1.5 * e.hydrogens);
}

double oxygen_contribution(const mol::Atom &a, const Environment &e) {
  const int n = e.heavy;
  if (a.aromatic) {
    if (n == 2 && e.aromatic == 2)
      return 13.14;
  } else if (a.formal_charge == 0) {
    if (n == 1 && e.doubles == 1)
      return 17.07;
    if (n == 2 && e.singles == 2)
      return e.in_three_ring ? 12.53 : 9.23;
    if (n == 1 && e.singles == 1 && e.hydrogens == 1)
      return 20.23;
  } else if (a.formal_charge == -1) {
    if (n == 1 && e.singles == 1 && e.hydrogens == 0)
      return 23.06;
  }
  return std::max(0.0, 28.5 - 8.6 * n + 1.5 * e.hydrogens);
}

// Order-independent sum: relabeling atoms must not change the last bit.
double stable_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t: terms)
    s += t;
  return s;
}

}  // namespace

const std::array<std::string_view, kNumDescriptors> &descriptor_names() {
  static const std::array<std::string_view, kNumDescriptors> kNames = {
    "molwt", "hbd",   "hba",   "logp",  "tpsa",  "aux01", "aux02", "aux03",
    "aux04", "aux05", "aux06", "aux07", "aux08", "aux09", "aux10", "aux11",
  };
  return kNames;
}

int descriptor_index(std::string_view name) {
  const auto &names = descriptor_names();
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

double DescriptorVector::get(std::string_view name) const {
  int i = descriptor_index(name);
  if (i < 0)
    throw Error(ErrorCode::kUnknownOverrideKey,
                "unknown descriptor '" + std::string(name) + "'");
  return values[i];
}

Provenance DescriptorVector::provenance_of(std::string_view name) const {
  int i = descriptor_index(name);
  if (i < 0)
    throw Error(ErrorCode::kUnknownOverrideKey,
                "unknown descriptor '" + std::string(name) + "'");
  return provenance[i];
}

double tpsa_contribution(const mol::MolGraph &m, int atom) {
  const mol::Atom &a = m.atoms()[atom];
  if (a.element == 7)
    return nitrogen_contribution(a, environment_of(m, atom));
  if (a.element == 8)
    return oxygen_contribution(a, environment_of(m, atom));
  return 0.0;
}

double logp_contribution(const mol::Atom &a) {
  switch (a.element) {
  case 6:
    return a.aromatic ? 0.3 : 0.2;
  case 7:
    return -0.7;
  case 8:
    return -0.4;
  case 9:
  case 17:
  case 35:
  case 53:
    return 0.6;
  case 16:
    return 0.4;
  default:
    return 0.0;
  }
}

DescriptorVector descriptor_vector(const mol::MolGraph &m,
                                   const DescriptorOverrides &overrides) {
  for (const auto &[key, value]: overrides) {
    if (descriptor_index(key) < 0)
      throw Error(ErrorCode::kUnknownOverrideKey,
                  "unknown descriptor override '" + key + "'");
  }

  std::vector<int> element_counts(mol::kMaxAtomicNumber + 1, 0);
  int hydrogens = 0;
  int donors = 0, acceptors = 0;
  std::vector<double> tpsa_terms, logp_terms;
  for (std::size_t i = 0; i < m.num_atoms(); ++i) {
    const mol::Atom &a = m.atoms()[i];
    ++element_counts[a.element];
    hydrogens += a.implicit_h;
    if (a.element == 7 || a.element == 8) {
      int h = a.implicit_h;
      for (const mol::Neighbor &nb: m.neighbors(static_cast<int>(i)))
        h += m.atoms()[nb.atom].element == 1 ? 1 : 0;
      if (h > 0)
        ++donors;
      if (a.formal_charge <= 0)
        ++acceptors;
      tpsa_terms.push_back(tpsa_contribution(m, static_cast<int>(i)));
    }
    logp_terms.push_back(logp_contribution(a));
  }

  double molwt = hydrogens * mol::kHydrogenMass;
  for (int z = 1; z <= mol::kMaxAtomicNumber; ++z) {
    if (element_counts[z] > 0)
      molwt += element_counts[z] * mol::element(z).mass;
  }

  DescriptorVector d;
  d.values[0] = molwt;
  d.values[1] = donors;
  d.values[2] = acceptors;
  d.values[3] = stable_sum(std::move(logp_terms));
  d.values[4] = stable_sum(std::move(tpsa_terms));
  d.provenance.fill(Provenance::kComputed);
  for (const auto &[key, value]: overrides) {
    int i = descriptor_index(key);
    d.values[i] = value;
    d.provenance[i] = Provenance::kInjected;
  }
  return d;
}

}  // namespace ccpred::chem
