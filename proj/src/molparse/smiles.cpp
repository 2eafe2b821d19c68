//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/molparse/smiles.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <istream>
#include <map>
#include <ostream>

#include "ccpred/core/error.h"
#include "ccpred/core/text.h"
#include "ccpred/molparse/element.h"

namespace ccpred::mol {
namespace {

// Symbols beyond the supported table, recognized so that they are reported
// as unsupported rather than as syntax errors.
constexpr std::array<std::string_view, 64> kHeavySymbols = {
  "Cs", "Ba", "La", "Ce", "Pr", "Nd", "Pm", "Sm", "Eu", "Gd", "Tb",
  "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W",  "Re", "Os",
  "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr",
  "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm", "Bk", "Cf",
  "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs", "Mt",
  "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};

bool is_heavy_symbol(std::string_view s) {
  return std::find(kHeavySymbols.begin(), kHeavySymbols.end(), s)
         != kHeavySymbols.end();
}

struct RingOpen {
  int atom;
  char symbol;
  std::size_t pos;
};

class Parser {
public:
  explicit Parser(std::string_view text): s_(text) { }

  MolGraph run();

private:
  [[noreturn]] void syntax(std::size_t at, const std::string &why) const {
    throw SmilesError(ErrorCode::kSyntaxError, at, why);
  }
  [[noreturn]] void unsupported(std::size_t at, const std::string &why) const {
    throw SmilesError(ErrorCode::kUnsupportedFeature, at, why);
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
  }

  void parse_organic();
  void parse_bracket();
  void parse_ring_closure();
  void add_atom(Atom atom, std::size_t at);
  void add_bond(int a, int b, char symbol, std::size_t at);

  std::string_view s_;
  std::size_t pos_ = 0;

  std::vector<Atom> atoms_;
  std::vector<std::size_t> atom_pos_;
  std::vector<Bond> bonds_;
  std::vector<std::string> warnings_;

  int prev_ = -1;
  char pending_ = 0;
  std::size_t pending_pos_ = 0;
  std::vector<int> branches_;
  bool branch_opened_ = false;
  std::map<int, RingOpen> rings_;
};

void Parser::add_atom(Atom atom, std::size_t at) {
  const int idx = static_cast<int>(atoms_.size());
  atoms_.push_back(atom);
  atom_pos_.push_back(at);
  if (prev_ >= 0)
    add_bond(prev_, idx, pending_, pending_ ? pending_pos_ : at);
  pending_ = 0;
  prev_ = idx;
  branch_opened_ = false;
}

void Parser::add_bond(int a, int b, char symbol, std::size_t at) {
  if (a == b)
    syntax(at, "ring closure bonds an atom to itself");
  for (const Bond &x: bonds_) {
    if ((x.begin == a && x.end == b) || (x.begin == b && x.end == a))
      syntax(at, "duplicate bond between the same atoms");
  }
  Bond bond;
  bond.begin = a;
  bond.end = b;
  switch (symbol) {
  case 0:
    bond.order = atoms_[a].aromatic && atoms_[b].aromatic
                     ? BondOrder::kAromatic
                     : BondOrder::kSingle;
    break;
  case '-':
    bond.order = BondOrder::kSingle;
    break;
  case '=':
    bond.order = BondOrder::kDouble;
    break;
  case '#':
    bond.order = BondOrder::kTriple;
    break;
  case ':':
    bond.order = BondOrder::kAromatic;
    break;
  case '/':
    bond.order = BondOrder::kSingle;
    bond.direction = BondDirection::kUp;
    break;
  case '\\':
    bond.order = BondOrder::kSingle;
    bond.direction = BondDirection::kDown;
    break;
  default:
    syntax(at, std::string("unknown bond symbol '") + symbol + "'");
  }
  bonds_.push_back(bond);
}

void Parser::parse_organic() {
  const std::size_t at = pos_;
  Atom atom;
  const char c = peek();
  std::string_view sym;
  if (c == 'C' && peek(1) == 'l') {
    sym = "Cl";
  } else if (c == 'B' && peek(1) == 'r') {
    sym = "Br";
  } else if (std::string_view("BCNOPSFI").find(c) != std::string_view::npos) {
    sym = s_.substr(pos_, 1);
  } else if (std::string_view("bcnops").find(c) != std::string_view::npos) {
    sym = s_.substr(pos_, 1);
    atom.aromatic = true;
  } else if (c == '*') {
    unsupported(at, "wildcard atom '*'");
  } else {
    syntax(at, std::string("unexpected character '") + c + "'");
  }
  pos_ += sym.size();

  std::string upper(sym);
  upper[0] = static_cast<char>(std::toupper(upper[0]));
  atom.element = find_element(upper)->atomic_number;
  add_atom(atom, at);
}

void Parser::parse_bracket() {
  const std::size_t at = pos_;
  ++pos_;  // '['
  Atom atom;
  atom.bracket = true;

  if (std::isdigit(static_cast<unsigned char>(peek()))) {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())))
      ++pos_;
    warnings_.push_back("isotope " + std::string(s_.substr(start, pos_ - start))
                        + " ignored on atom "
                        + std::to_string(atoms_.size()));
  }

  // Element symbol.
  const char c = peek();
  if (c == '*')
    unsupported(pos_, "wildcard atom '*'");
  if (std::islower(static_cast<unsigned char>(c))) {
    std::string_view two = s_.substr(pos_, 2);
    if (two == "se" || two == "as" || two == "te") {
      std::string up(two);
      up[0] = static_cast<char>(std::toupper(up[0]));
      atom.element = find_element(up)->atomic_number;
      pos_ += 2;
    } else if (std::string_view("bcnops").find(c) != std::string_view::npos) {
      atom.element = find_element(std::string(1, static_cast<char>(
                                      std::toupper(c))))
                         ->atomic_number;
      ++pos_;
    } else {
      syntax(pos_, std::string("unknown aromatic symbol '") + c + "'");
    }
    atom.aromatic = true;
  } else if (std::isupper(static_cast<unsigned char>(c))) {
    std::string_view two = s_.substr(pos_, 2);
    std::string_view one = s_.substr(pos_, 1);
    if (two.size() == 2 && std::islower(static_cast<unsigned char>(two[1]))
        && find_element(two) != nullptr) {
      atom.element = find_element(two)->atomic_number;
      pos_ += 2;
    } else if (two.size() == 2
               && std::islower(static_cast<unsigned char>(two[1]))
               && is_heavy_symbol(two)) {
      unsupported(pos_, "element " + std::string(two) + " is not supported");
    } else if (find_element(one) != nullptr) {
      atom.element = find_element(one)->atomic_number;
      pos_ += 1;
    } else if (is_heavy_symbol(one)) {
      unsupported(pos_, "element " + std::string(one) + " is not supported");
    } else {
      syntax(pos_, "unknown element symbol");
    }
  } else {
    syntax(pos_, "expected element symbol in bracket atom");
  }

  // Chirality.
  if (peek() == '@') {
    ++pos_;
    if (peek() == '@') {
      ++pos_;
      atom.chirality = Chirality::kCW;
    } else {
      atom.chirality = Chirality::kCCW;
    }
    if (std::isupper(static_cast<unsigned char>(peek())) && peek() != 'H')
      unsupported(pos_, "extended stereo classes are not supported");
    if (peek() == 'H' && std::isupper(static_cast<unsigned char>(peek(1))))
      unsupported(pos_, "extended stereo classes are not supported");
  }

  // Hydrogen count.
  if (peek() == 'H') {
    ++pos_;
    atom.implicit_h = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      atom.implicit_h = peek() - '0';
      ++pos_;
    }
  }

  // Charge.
  if (peek() == '+' || peek() == '-') {
    const char sign_char = peek();
    const int sign = sign_char == '+' ? 1 : -1;
    ++pos_;
    int magnitude = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      magnitude = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        magnitude = magnitude * 10 + (peek() - '0');
        ++pos_;
      }
    } else {
      while (peek() == sign_char) {
        ++magnitude;
        ++pos_;
      }
    }
    atom.formal_charge = sign * magnitude;
  }

  if (peek() == ':')
    unsupported(pos_, "atom classes are not supported");
  if (peek() != ']')
    syntax(pos_, "expected ']' to close bracket atom");
  ++pos_;
  add_atom(atom, at);
}

void Parser::parse_ring_closure() {
  const std::size_t at = pos_;
  if (prev_ < 0)
    syntax(at, "ring closure without a preceding atom");
  int number;
  if (peek() == '%') {
    if (!std::isdigit(static_cast<unsigned char>(peek(1)))
        || !std::isdigit(static_cast<unsigned char>(peek(2))))
      syntax(at, "'%' must be followed by two digits");
    number = (peek(1) - '0') * 10 + (peek(2) - '0');
    pos_ += 3;
  } else {
    number = peek() - '0';
    ++pos_;
  }

  auto it = rings_.find(number);
  if (it == rings_.end()) {
    rings_.emplace(number, RingOpen { prev_, pending_, at });
    pending_ = 0;
    return;
  }
  char symbol = it->second.symbol;
  if (pending_ != 0) {
    const bool directional_pair = (symbol == '/' || symbol == '\\')
                                  && (pending_ == '/' || pending_ == '\\');
    if (symbol != 0 && symbol != pending_ && !directional_pair)
      syntax(at, "conflicting bond symbols on ring closure "
                     + std::to_string(number));
    symbol = pending_;
  }
  add_bond(it->second.atom, prev_, symbol, at);
  rings_.erase(it);
  pending_ = 0;
}

MolGraph Parser::run() {
  if (trim(s_).empty())
    syntax(0, "empty SMILES");

  while (!at_end()) {
    const char c = peek();
    switch (c) {
    case '(':
      if (prev_ < 0)
        syntax(pos_, "branch without a preceding atom");
      if (pending_ != 0)
        syntax(pos_, "bond symbol before branch");
      branches_.push_back(prev_);
      branch_opened_ = true;
      ++pos_;
      break;
    case ')':
      if (branches_.empty())
        syntax(pos_, "unmatched ')'");
      if (branch_opened_)
        syntax(pos_, "empty branch");
      if (pending_ != 0)
        syntax(pos_, "dangling bond at end of branch");
      prev_ = branches_.back();
      branches_.pop_back();
      ++pos_;
      break;
    case '-':
    case '=':
    case '#':
    case ':':
    case '/':
    case '\\':
      if (prev_ < 0)
        syntax(pos_, "bond without a preceding atom");
      if (pending_ != 0)
        syntax(pos_, "consecutive bond symbols");
      pending_ = c;
      pending_pos_ = pos_;
      ++pos_;
      break;
    case '$':
      unsupported(pos_, "quadruple bonds are not supported");
    case '.':
      if (prev_ < 0 || pending_ != 0)
        syntax(pos_, "misplaced '.'");
      if (!branches_.empty())
        unsupported(pos_, "'.' inside a branch is not supported");
      prev_ = -1;
      ++pos_;
      break;
    case '%':
      parse_ring_closure();
      break;
    case '[':
      parse_bracket();
      break;
    default:
      if (std::isdigit(static_cast<unsigned char>(c)))
        parse_ring_closure();
      else
        parse_organic();
      break;
    }
  }

  if (pending_ != 0)
    syntax(pending_pos_, "dangling bond at end of input");
  if (!branches_.empty())
    syntax(s_.size(), "unclosed branch");
  if (!rings_.empty())
    syntax(rings_.begin()->second.pos,
           "unclosed ring " + std::to_string(rings_.begin()->first));
  if (atoms_.empty())
    syntax(0, "no atoms");

  MolGraph mol = MolGraph::build(atoms_, bonds_);
  for (std::size_t i = 0; i < mol.num_atoms(); ++i) {
    if (!mol.atoms()[i].aromatic)
      continue;
    bool ring = false;
    for (const Neighbor &nb: mol.neighbors(static_cast<int>(i)))
      ring = ring || mol.bonds()[nb.bond].in_ring;
    if (!ring)
      syntax(atom_pos_[i], "aromatic atom outside a ring");
  }
  for (std::string &w: warnings_)
    mol.add_warning(std::move(w));
  return mol;
}

}  // namespace

MolGraph parse_smiles(std::string_view text) {
  return Parser(text).run();
}

std::vector<std::string> read_smiles_lines(std::istream &is) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(is, line)) {
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#')
      continue;
    std::size_t ws = t.find_first_of(" \t");
    out.emplace_back(t.substr(0, ws));
  }
  return out;
}

void dump_molecule(std::ostream &os, const MolGraph &mol) {
  os << "atoms " << mol.num_atoms() << "\n";
  for (std::size_t i = 0; i < mol.num_atoms(); ++i) {
    const Atom &a = mol.atoms()[i];
    os << "  " << i << " " << element(a.element).symbol
       << " charge=" << a.formal_charge
       << " aromatic=" << (a.aromatic ? 1 : 0) << " h=" << a.implicit_h
       << " degree=" << a.degree << " xval=" << a.explicit_valence
       << " ival=" << a.implicit_valence
       << " hyb=" << to_string(a.hybridization)
       << " chiral=" << to_string(a.chirality) << "\n";
  }
  os << "bonds " << mol.num_bonds() << "\n";
  for (std::size_t b = 0; b < mol.num_bonds(); ++b) {
    const Bond &bd = mol.bonds()[b];
    os << "  " << b << " " << bd.begin << "-" << bd.end << " "
       << to_string(bd.order) << " ring=" << (bd.in_ring ? 1 : 0)
       << " dir=" << to_string(bd.direction) << "\n";
  }
  os << "rings " << mol.rings().size() << "\n";
  for (const Ring &r: mol.rings()) {
    os << "  [";
    for (std::size_t k = 0; k < r.atoms.size(); ++k)
      os << (k ? " " : "") << r.atoms[k];
    os << "] aromatic=" << (r.aromatic ? 1 : 0) << "\n";
  }
  os << "canonical";
  for (int i: mol.canonical_order())
    os << " " << i;
  os << "\n";
  for (const std::string &w: mol.warnings())
    os << "warning " << w << "\n";
}

}  // namespace ccpred::mol
