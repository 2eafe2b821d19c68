//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/molparse/molecule.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

#include "ccpred/core/error.h"
#include "ccpred/molparse/element.h"

namespace ccpred::mol {
namespace {

using Adjacency = std::vector<std::vector<Neighbor>>;

Adjacency make_adjacency(std::size_t n, const std::vector<Bond> &bonds) {
  Adjacency adj(n);
  for (int b = 0; b < static_cast<int>(bonds.size()); ++b) {
    adj[bonds[b].begin].push_back({ bonds[b].end, b });
    adj[bonds[b].end].push_back({ bonds[b].begin, b });
  }
  for (auto &nbrs: adj) {
    std::sort(nbrs.begin(), nbrs.end(),
              [](const Neighbor &x, const Neighbor &y) {
                return std::tie(x.atom, x.bond) < std::tie(y.atom, y.bond);
              });
  }
  return adj;
}

// A bond lies on a cycle iff it is not a bridge.
std::vector<bool> find_ring_bonds(std::size_t n, std::size_t m,
                                  const Adjacency &adj) {
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> bridge(m, false);
  int timer = 0;

  std::function<void(int, int)> dfs = [&](int v, int parent_bond) {
    disc[v] = low[v] = timer++;
    for (const Neighbor &nb: adj[v]) {
      if (nb.bond == parent_bond)
        continue;
      if (disc[nb.atom] >= 0) {
        low[v] = std::min(low[v], disc[nb.atom]);
      } else {
        dfs(nb.atom, nb.bond);
        low[v] = std::min(low[v], low[nb.atom]);
        if (low[nb.atom] > disc[v])
          bridge[nb.bond] = true;
      }
    }
  };
  for (int v = 0; v < static_cast<int>(n); ++v) {
    if (disc[v] < 0)
      dfs(v, -1);
  }

  std::vector<bool> in_ring(m);
  for (std::size_t b = 0; b < m; ++b)
    in_ring[b] = !bridge[b];
  return in_ring;
}

int count_components(std::size_t n, const Adjacency &adj) {
  std::vector<bool> seen(n, false);
  int comps = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s])
      continue;
    ++comps;
    std::vector<int> stack { static_cast<int>(s) };
    seen[s] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const Neighbor &nb: adj[v]) {
        if (!seen[nb.atom]) {
          seen[nb.atom] = true;
          stack.push_back(nb.atom);
        }
      }
    }
  }
  return comps;
}

using EdgeSet = std::vector<std::uint64_t>;

struct Candidate {
  EdgeSet edges;
  std::vector<int> sorted_atoms;
  std::size_t size;
};

bool edge_set_empty(const EdgeSet &s) {
  return std::all_of(s.begin(), s.end(),
                     [](std::uint64_t w) { return w == 0; });
}

int lowest_bit(const EdgeSet &s) {
  for (std::size_t w = 0; w < s.size(); ++w) {
    if (s[w] != 0)
      return static_cast<int>(w * 64 + __builtin_ctzll(s[w]));
  }
  return -1;
}

bool test_bit(const EdgeSet &s, int bit) {
  return (s[bit / 64] >> (bit % 64)) & 1U;
}

// Orders a cycle given as a bond set: start at the smallest atom and step
// toward its smaller ring neighbor.
std::vector<int> cycle_atoms(const EdgeSet &edges,
                             const std::vector<Bond> &bonds) {
  std::map<int, std::vector<int>> nbr;
  for (int b = 0; b < static_cast<int>(bonds.size()); ++b) {
    if (!test_bit(edges, b))
      continue;
    nbr[bonds[b].begin].push_back(bonds[b].end);
    nbr[bonds[b].end].push_back(bonds[b].begin);
  }
  std::vector<int> cycle;
  if (nbr.empty())
    return cycle;
  int start = nbr.begin()->first;
  int prev = -1;
  int cur = start;
  do {
    cycle.push_back(cur);
    auto &ns = nbr[cur];
    int next;
    if (prev < 0)
      next = *std::min_element(ns.begin(), ns.end());
    else
      next = ns[0] == prev ? ns[1] : ns[0];
    prev = cur;
    cur = next;
  } while (cur != start && cycle.size() <= bonds.size());
  return cycle;
}

// Smallest set of smallest rings from Horton's candidate set followed by
// greedy GF(2) independence selection.
std::vector<Ring> find_sssr(std::size_t n, const std::vector<Bond> &bonds,
                            const std::vector<bool> &in_ring,
                            const Adjacency &adj, int components) {
  const std::size_t m = bonds.size();
  const long cyclomatic = static_cast<long>(m) - static_cast<long>(n)
                          + components;
  if (cyclomatic <= 0)
    return {};

  const std::size_t words = (m + 63) / 64;
  std::vector<Candidate> candidates;
  std::set<EdgeSet> seen;

  for (int w = 0; w < static_cast<int>(n); ++w) {
    bool ring_atom = std::any_of(adj[w].begin(), adj[w].end(),
                                 [&](const Neighbor &nb) {
                                   return in_ring[nb.bond];
                                 });
    if (!ring_atom)
      continue;

    // BFS over ring bonds.
    std::vector<int> dist(n, -1), parent_bond(n, -1);
    std::queue<int> q;
    dist[w] = 0;
    q.push(w);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Neighbor &nb: adj[v]) {
        if (!in_ring[nb.bond] || dist[nb.atom] >= 0)
          continue;
        dist[nb.atom] = dist[v] + 1;
        parent_bond[nb.atom] = nb.bond;
        q.push(nb.atom);
      }
    }

    auto path_to = [&](int v) {
      std::vector<int> atoms { v };
      std::vector<int> path_bonds;
      while (v != w) {
        int b = parent_bond[v];
        path_bonds.push_back(b);
        v = bonds[b].other(v);
        atoms.push_back(v);
      }
      return std::make_pair(atoms, path_bonds);
    };

    for (int b = 0; b < static_cast<int>(m); ++b) {
      if (!in_ring[b])
        continue;
      int u = bonds[b].begin, v = bonds[b].end;
      if (dist[u] < 0 || dist[v] < 0)
        continue;
      if (parent_bond[u] == b || parent_bond[v] == b)
        continue;
      auto [pu_atoms, pu_bonds] = path_to(u);
      auto [pv_atoms, pv_bonds] = path_to(v);
      // Paths must meet only at w.
      std::vector<int> a1(pu_atoms.begin(), pu_atoms.end() - 1);
      std::vector<int> a2(pv_atoms.begin(), pv_atoms.end() - 1);
      std::sort(a1.begin(), a1.end());
      std::sort(a2.begin(), a2.end());
      std::vector<int> common;
      std::set_intersection(a1.begin(), a1.end(), a2.begin(), a2.end(),
                            std::back_inserter(common));
      if (!common.empty())
        continue;

      EdgeSet es(words, 0);
      auto set = [&](int bond) { es[bond / 64] |= 1ULL << (bond % 64); };
      set(b);
      for (int x: pu_bonds)
        set(x);
      for (int x: pv_bonds)
        set(x);
      if (!seen.insert(es).second)
        continue;

      std::vector<int> atoms = a1;
      atoms.insert(atoms.end(), a2.begin(), a2.end());
      atoms.push_back(w);
      std::sort(atoms.begin(), atoms.end());
      candidates.push_back({ es, atoms, atoms.size() });
    }
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate &x, const Candidate &y) {
              return std::tie(x.size, x.sorted_atoms)
                     < std::tie(y.size, y.sorted_atoms);
            });

  // Basis rows keyed by pivot bit.
  std::map<int, EdgeSet> basis;
  std::vector<Ring> rings;
  for (const Candidate &c: candidates) {
    if (static_cast<long>(rings.size()) >= cyclomatic)
      break;
    EdgeSet r = c.edges;
    while (!edge_set_empty(r)) {
      int p = lowest_bit(r);
      auto it = basis.find(p);
      if (it == basis.end())
        break;
      for (std::size_t k = 0; k < words; ++k)
        r[k] ^= it->second[k];
    }
    if (edge_set_empty(r))
      continue;
    basis.emplace(lowest_bit(r), r);
    rings.push_back({ cycle_atoms(c.edges, bonds), false });
  }

  std::sort(rings.begin(), rings.end(), [](const Ring &x, const Ring &y) {
    std::vector<int> sx = x.atoms, sy = y.atoms;
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());
    return std::make_pair(sx.size(), sx) < std::make_pair(sy.size(), sy);
  });
  return rings;
}

int bond_order_value(BondOrder o) {
  switch (o) {
  case BondOrder::kSingle:
    return 1;
  case BondOrder::kDouble:
    return 2;
  case BondOrder::kTriple:
    return 3;
  case BondOrder::kAromatic:
    return 1;
  }
  return 1;
}

// Aromatic O/S/Se, and aromatic N/P that already carry a hydrogen or three
// connections, donate a lone pair; other aromatic atoms gain one unit of
// valence from the pi system.
int explicit_valence_of(const Atom &atom, const std::vector<Neighbor> &nbrs,
                        const std::vector<Bond> &bonds) {
  int aromatic_bonds = 0;
  int others = 0;
  for (const Neighbor &nb: nbrs) {
    const Bond &b = bonds[nb.bond];
    if (b.order == BondOrder::kAromatic)
      ++aromatic_bonds;
    else
      others += bond_order_value(b.order);
  }
  int v = aromatic_bonds + others;
  if (atom.aromatic && aromatic_bonds > 0) {
    bool donor = atom.element == 8 || atom.element == 16
                 || atom.element == 34;
    if ((atom.element == 7 || atom.element == 15)
        && ((atom.bracket && atom.implicit_h > 0) || v >= 3))
      donor = true;
    if (!donor)
      v += 1;
  }
  return v;
}

int default_implicit_h(const Atom &atom, int explicit_valence) {
  if (atom.element > kMaxAtomicNumber)
    return 0;
  for (int val: element(atom.element).default_valences) {
    if (val >= explicit_valence)
      return val - explicit_valence;
  }
  return 0;
}

std::vector<int> dense_rank(const std::vector<std::vector<long>> &keys) {
  const std::size_t n = keys.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return keys[a] < keys[b]; });
  std::vector<int> rank(n, 0);
  int r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && keys[order[i]] != keys[order[i - 1]])
      ++r;
    rank[order[i]] = r;
  }
  return rank;
}

int count_classes(const std::vector<int> &rank) {
  return rank.empty() ? 0 : *std::max_element(rank.begin(), rank.end()) + 1;
}

// Morgan-style iterative refinement; remaining ties are broken in favour of
// the lowest input index and refinement is repeated.
std::vector<int> canonical_ranks(const std::vector<Atom> &atoms,
                                 const std::vector<Bond> &bonds,
                                 const Adjacency &adj) {
  const std::size_t n = atoms.size();
  std::vector<std::vector<long>> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    int ring_bonds = 0;
    for (const Neighbor &nb: adj[i])
      ring_bonds += bonds[nb.bond].in_ring ? 1 : 0;
    const Atom &a = atoms[i];
    keys[i] = { a.element, a.degree,     a.implicit_h,
                a.formal_charge, a.aromatic ? 1 : 0, ring_bonds };
  }
  std::vector<int> rank = dense_rank(keys);

  auto refine = [&]() {
    int classes = count_classes(rank);
    while (true) {
      std::vector<std::vector<long>> next(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<long, long>> env;
        for (const Neighbor &nb: adj[i])
          env.emplace_back(rank[nb.atom],
                           static_cast<long>(bonds[nb.bond].order));
        std::sort(env.begin(), env.end());
        next[i].push_back(rank[i]);
        for (auto [r, o]: env) {
          next[i].push_back(r);
          next[i].push_back(o);
        }
      }
      rank = dense_rank(next);
      int c = count_classes(rank);
      if (c == classes)
        break;
      classes = c;
    }
  };

  refine();
  while (count_classes(rank) < static_cast<int>(n)) {
    // Smallest tied rank value, lowest input index within it.
    std::vector<int> count(n, 0);
    for (int r: rank)
      ++count[r];
    int tied = -1;
    for (std::size_t r = 0; r < n; ++r) {
      if (count[r] > 1) {
        tied = static_cast<int>(r);
        break;
      }
    }
    int chosen = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (rank[i] == tied) {
        chosen = static_cast<int>(i);
        break;
      }
    }
    std::vector<std::vector<long>> split(n);
    for (std::size_t i = 0; i < n; ++i)
      split[i] = { rank[i], static_cast<int>(i) == chosen ? 0 : 1 };
    rank = dense_rank(split);
    refine();
  }
  return rank;
}

}  // namespace

Hybridization hybridization_of(const MolGraph &mol, int atom) {
  if (atom < 0 || atom >= static_cast<int>(mol.num_atoms()))
    throw Error(ErrorCode::kInvalidArgument, "atom index out of range");
  int doubles = 0, triples = 0, aromatic = 0;
  for (const Neighbor &nb: mol.neighbors(atom)) {
    switch (mol.bonds()[nb.bond].order) {
    case BondOrder::kDouble:
      ++doubles;
      break;
    case BondOrder::kTriple:
      ++triples;
      break;
    case BondOrder::kAromatic:
      ++aromatic;
      break;
    default:
      break;
    }
  }
  if (triples > 0 || doubles >= 2)
    return Hybridization::kSP;
  if (doubles == 1 || aromatic > 0)
    return Hybridization::kSP2;
  switch (mol.atoms()[atom].element) {
  case 6:
  case 7:
  case 8:
  case 16:
    return Hybridization::kSP3;
  default:
    return Hybridization::kOther;
  }
}

RingInfo ring_membership(const MolGraph &mol) {
  const Adjacency adj = make_adjacency(mol.num_atoms(), mol.bonds());
  RingInfo info;
  info.bond_in_ring = find_ring_bonds(mol.num_atoms(), mol.num_bonds(), adj);
  info.rings = find_sssr(mol.num_atoms(), mol.bonds(), info.bond_in_ring, adj,
                         count_components(mol.num_atoms(), adj));
  for (Ring &r: info.rings) {
    r.aromatic = std::all_of(r.atoms.begin(), r.atoms.end(), [&](int a) {
      return mol.atoms()[a].aromatic;
    });
  }
  return info;
}

MolGraph MolGraph::build(std::vector<Atom> atoms, std::vector<Bond> bonds) {
  const std::size_t n = atoms.size();
  if (n == 0)
    throw Error(ErrorCode::kInvalidArgument, "molecule has no atoms");

  std::set<std::pair<int, int>> seen;
  for (const Bond &b: bonds) {
    if (b.begin < 0 || b.end < 0 || b.begin >= static_cast<int>(n)
        || b.end >= static_cast<int>(n))
      throw Error(ErrorCode::kInvalidArgument, "bond endpoint out of range");
    if (b.begin == b.end)
      throw Error(ErrorCode::kInvalidArgument, "bond endpoints coincide");
    auto key = std::minmax(b.begin, b.end);
    if (!seen.insert(key).second)
      throw Error(ErrorCode::kInvalidArgument, "duplicate bond");
  }
  for (const Atom &a: atoms) {
    if (a.element < 1 || a.element > kMaxAtomicNumber)
      throw Error(ErrorCode::kInvalidArgument, "unsupported element");
  }

  MolGraph mol;
  mol.adjacency_ = make_adjacency(n, bonds);
  mol.num_components_ = count_components(n, mol.adjacency_);

  std::vector<bool> in_ring = find_ring_bonds(n, bonds.size(), mol.adjacency_);
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    bonds[b].in_ring = in_ring[b];
    // Aromatic bonds only exist inside rings; a bond between two aromatic
    // atoms of different rings (biphenyl) is single.
    if (bonds[b].order == BondOrder::kAromatic && !in_ring[b])
      bonds[b].order = BondOrder::kSingle;
  }
  mol.bonds_ = std::move(bonds);

  for (std::size_t i = 0; i < n; ++i) {
    Atom &a = atoms[i];
    a.degree = static_cast<int>(mol.adjacency_[i].size());
    a.explicit_valence = explicit_valence_of(a, mol.adjacency_[i],
                                             mol.bonds_);
    if (!a.bracket)
      a.implicit_h = default_implicit_h(a, a.explicit_valence);
    a.implicit_valence = a.implicit_h;
  }
  mol.atoms_ = std::move(atoms);
  for (std::size_t i = 0; i < n; ++i)
    mol.atoms_[i].hybridization = hybridization_of(mol, static_cast<int>(i));

  mol.rings_ = ring_membership(mol).rings;

  std::vector<int> rank = canonical_ranks(mol.atoms_, mol.bonds_,
                                          mol.adjacency_);
  mol.canonical_order_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    mol.canonical_order_[rank[i]] = static_cast<int>(i);
  return mol;
}

int MolGraph::total_hydrogens() const {
  int h = 0;
  for (const Atom &a: atoms_)
    h += a.implicit_h + (a.element == 1 ? 1 : 0);
  return h;
}

int MolGraph::bond_between(int a, int b) const {
  for (const Neighbor &nb: adjacency_[a]) {
    if (nb.atom == b)
      return nb.bond;
  }
  return -1;
}

MolGraph permute_atoms(const MolGraph &mol, const std::vector<int> &perm) {
  const std::size_t n = mol.num_atoms();
  if (perm.size() != n)
    throw Error(ErrorCode::kInvalidArgument, "permutation size mismatch");
  std::vector<int> inverse(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (perm[i] < 0 || perm[i] >= static_cast<int>(n) || inverse[perm[i]] >= 0)
      throw Error(ErrorCode::kInvalidArgument, "not a permutation");
    inverse[perm[i]] = static_cast<int>(i);
  }
  std::vector<Atom> atoms(n);
  for (std::size_t i = 0; i < n; ++i)
    atoms[i] = mol.atoms()[perm[i]];
  std::vector<Bond> bonds = mol.bonds();
  for (Bond &b: bonds) {
    b.begin = inverse[b.begin];
    b.end = inverse[b.end];
  }
  MolGraph out = MolGraph::build(std::move(atoms), std::move(bonds));
  for (const std::string &w: mol.warnings())
    out.add_warning(w);
  return out;
}

const char *to_string(BondOrder order) {
  switch (order) {
  case BondOrder::kSingle:
    return "single";
  case BondOrder::kDouble:
    return "double";
  case BondOrder::kTriple:
    return "triple";
  case BondOrder::kAromatic:
    return "aromatic";
  }
  return "?";
}

const char *to_string(Hybridization hyb) {
  switch (hyb) {
  case Hybridization::kSP:
    return "sp";
  case Hybridization::kSP2:
    return "sp2";
  case Hybridization::kSP3:
    return "sp3";
  case Hybridization::kOther:
    return "other";
  }
  return "?";
}

const char *to_string(Chirality chir) {
  switch (chir) {
  case Chirality::kNone:
    return "none";
  case Chirality::kCW:
    return "cw";
  case Chirality::kCCW:
    return "ccw";
  }
  return "?";
}

const char *to_string(BondDirection dir) {
  switch (dir) {
  case BondDirection::kNone:
    return "none";
  case BondDirection::kUp:
    return "up";
  case BondDirection::kDown:
    return "down";
  }
  return "?";
}

}  // namespace ccpred::mol
