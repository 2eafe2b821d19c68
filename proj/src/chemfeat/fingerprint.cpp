//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/chemfeat/fingerprint.h"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ccpred/core/error.h"

namespace ccpred::chem {
namespace {

int bond_label(mol::BondOrder order) {
  switch (order) {
  case mol::BondOrder::kSingle:
    return 1;
  case mol::BondOrder::kDouble:
    return 2;
  case mol::BondOrder::kTriple:
    return 3;
  case mol::BondOrder::kAromatic:
    return 4;
  }
  return 0;
}

int atom_label(const mol::Atom &a) {
  return a.element * 2 + (a.aromatic ? 1 : 0);
}

std::uint64_t fnv1a(const std::vector<int> &labels) {
  std::uint64_t h = 14695981039346656037ULL;
  for (int v: labels) {
    auto u = static_cast<std::uint32_t>(v);
    for (int k = 0; k < 4; ++k) {
      h ^= (u >> (8 * k)) & 0xFFU;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

class PathWalker {
public:
  PathWalker(const mol::MolGraph &m, Fingerprint &fp)
    : mol_(m), fp_(fp), visited_(m.num_atoms(), false) { }

  void walk_from(int start) {
    atoms_.assign(1, start);
    bonds_.clear();
    visited_[start] = true;
    extend();
    visited_[start] = false;
  }

private:
  void emit() {
    // Each path of >= 2 atoms is found from both ends; one copy suffices.
    if (atoms_.size() > 1 && atoms_.front() > atoms_.back())
      return;
    std::vector<int> fwd;
    fwd.reserve(2 * atoms_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      fwd.push_back(atom_label(mol_.atoms()[atoms_[i]]));
      if (i < bonds_.size())
        fwd.push_back(bond_label(mol_.bonds()[bonds_[i]].order));
    }
    std::vector<int> rev(fwd.rbegin(), fwd.rend());
    const std::vector<int> &key = std::min(fwd, rev);
    fp_.bits.set(fnv1a(key) % kFingerprintBits);
  }

  void extend() {
    emit();
    if (static_cast<int>(atoms_.size()) == kMaxPathAtoms)
      return;
    for (const mol::Neighbor &nb: mol_.neighbors(atoms_.back())) {
      if (visited_[nb.atom])
        continue;
      visited_[nb.atom] = true;
      atoms_.push_back(nb.atom);
      bonds_.push_back(nb.bond);
      extend();
      atoms_.pop_back();
      bonds_.pop_back();
      visited_[nb.atom] = false;
    }
  }

  const mol::MolGraph &mol_;
  Fingerprint &fp_;
  std::vector<bool> visited_;
  std::vector<int> atoms_;
  std::vector<int> bonds_;
};

}  // namespace

std::string_view to_string(FingerprintScheme scheme) {
  return scheme == FingerprintScheme::kHashedPaths ? "hashed_paths"
                                                   : "injected";
}

std::string Fingerprint::to_bitstring() const {
  std::string s(kFingerprintBits, '0');
  for (std::size_t i = 0; i < kFingerprintBits; ++i) {
    if (bits.test(i))
      s[i] = '1';
  }
  return s;
}

Fingerprint Fingerprint::from_bitstring(std::string_view text,
                                        FingerprintScheme scheme) {
  if (text.size() != kFingerprintBits)
    throw Error(ErrorCode::kParseError,
                "fingerprint bitstring must have 167 characters, got "
                  + std::to_string(text.size()));
  Fingerprint fp;
  fp.scheme = scheme;
  for (std::size_t i = 0; i < kFingerprintBits; ++i) {
    if (text[i] == '1')
      fp.bits.set(i);
    else if (text[i] != '0')
      throw Error(ErrorCode::kParseError,
                  "fingerprint bitstring has non-binary character at "
                    + std::to_string(i));
  }
  return fp;
}

Fingerprint fingerprint(const mol::MolGraph &m) {
  Fingerprint fp;
  PathWalker walker(m, fp);
  for (std::size_t i = 0; i < m.num_atoms(); ++i)
    walker.walk_from(static_cast<int>(i));
  return fp;
}

double tanimoto(const Fingerprint &a, const Fingerprint &b) {
  if (a.scheme != b.scheme)
    throw Error(ErrorCode::kSchemeMismatch,
                std::string("cannot compare ") + std::string(to_string(a.scheme))
                  + " with " + std::string(to_string(b.scheme)));
  std::size_t uni = (a.bits | b.bits).count();
  if (uni == 0)
    return 1.0;
  return static_cast<double>((a.bits & b.bits).count())
         / static_cast<double>(uni);
}

}  // namespace ccpred::chem
