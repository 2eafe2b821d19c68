//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_MOLPARSE_MOLECULE_H_
#define CCPRED_MOLPARSE_MOLECULE_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ccpred::mol {

enum class Chirality { kNone, kCW, kCCW };
enum class Hybridization { kSP, kSP2, kSP3, kOther };
enum class BondOrder { kSingle, kDouble, kTriple, kAromatic };
enum class BondDirection { kNone, kUp, kDown };

struct Atom {
  int element = 6;
  int formal_charge = 0;
  bool aromatic = false;
  int implicit_h = 0;
  Chirality chirality = Chirality::kNone;
  int degree = 0;
  int explicit_valence = 0;
  int implicit_valence = 0;
  Hybridization hybridization = Hybridization::kOther;

  // Input-side flag: bracket atoms carry an explicit hydrogen count and
  // never receive hydrogens from the default-valence table.
  bool bracket = false;

  bool operator==(const Atom &) const = default;
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::kSingle;
  bool in_ring = false;
  BondDirection direction = BondDirection::kNone;

  int other(int atom) const { return atom == begin ? end : begin; }
  bool operator==(const Bond &) const = default;
};

struct Ring {
  std::vector<int> atoms;  // cycle order, starting at the smallest index
  bool aromatic = false;

  bool operator==(const Ring &) const = default;
};

struct RingInfo {
  std::vector<bool> bond_in_ring;
  std::vector<Ring> rings;  // smallest set of smallest rings
};

struct Neighbor {
  int atom;
  int bond;

  bool operator==(const Neighbor &) const = default;
};

// Annotated molecular graph. Construct through parse_smiles() or
// MolGraph::build(); both derive every annotation (degree, valences,
// hydrogens, hybridization, rings, canonical order) from atoms and bonds.
class MolGraph {
public:
  MolGraph() = default;

  // Atoms need element, charge, aromatic, chirality and bracket/implicit_h
  // (for bracket atoms); everything else is recomputed.
  static MolGraph build(std::vector<Atom> atoms, std::vector<Bond> bonds);

  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Bond> &bonds() const { return bonds_; }
  const std::vector<Ring> &rings() const { return rings_; }
  const std::vector<int> &canonical_order() const { return canonical_order_; }
  const std::vector<Neighbor> &neighbors(int atom) const {
    return adjacency_[atom];
  }
  const std::vector<std::string> &warnings() const { return warnings_; }

  std::size_t num_atoms() const { return atoms_.size(); }
  std::size_t num_bonds() const { return bonds_.size(); }
  int num_components() const { return num_components_; }
  int total_hydrogens() const;

  // Index of the bond joining a and b, or -1.
  int bond_between(int a, int b) const;

  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

  bool operator==(const MolGraph &) const = default;

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<Ring> rings_;
  std::vector<int> canonical_order_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::string> warnings_;
  int num_components_ = 0;
};

RingInfo ring_membership(const MolGraph &mol);

// sp: a triple bond or two double bonds; sp2: one double or aromatic bond;
// sp3 otherwise for C/N/O/S; other for every remaining element.
Hybridization hybridization_of(const MolGraph &mol, int atom);

// Relabels atoms so that new atom i is old atom perm[i]. Useful for
// permutation-invariance checks.
MolGraph permute_atoms(const MolGraph &mol, const std::vector<int> &perm);

const char *to_string(BondOrder order);
const char *to_string(Hybridization hyb);
const char *to_string(Chirality chir);
const char *to_string(BondDirection dir);

}  // namespace ccpred::mol

#endif  // CCPRED_MOLPARSE_MOLECULE_H_
