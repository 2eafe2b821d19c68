//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/molparse/element.h"

#include <array>

#include "ccpred/core/error.h"

namespace ccpred::mol {
namespace {

// Default-valence table: B3 C4 N3 O2 P3/5 S2/4/6 halogens 1.
constexpr int kValH[] = { 1 };
constexpr int kValB[] = { 3 };
constexpr int kValC[] = { 4 };
constexpr int kValN[] = { 3 };
constexpr int kValO[] = { 2 };
constexpr int kValP[] = { 3, 5 };
constexpr int kValS[] = { 2, 4, 6 };
constexpr int kValHalogen[] = { 1 };

using V = std::span<const int>;

// Masses are IUPAC abridged standard atomic weights; radii from Cordero et al.
const std::array<Element, kMaxAtomicNumber> kElements = { {
  { 1, "H", 1.008, 0.31, V(kValH) },
  { 2, "He", 4.0026, 0.28, {} },
  { 3, "Li", 6.94, 1.28, {} },
  { 4, "Be", 9.0122, 0.96, {} },
  { 5, "B", 10.81, 0.84, V(kValB) },
  { 6, "C", 12.011, 0.76, V(kValC) },
  { 7, "N", 14.007, 0.71, V(kValN) },
  { 8, "O", 15.999, 0.66, V(kValO) },
  { 9, "F", 18.998, 0.57, V(kValHalogen) },
  { 10, "Ne", 20.180, 0.58, {} },
  { 11, "Na", 22.990, 1.66, {} },
  { 12, "Mg", 24.305, 1.41, {} },
  { 13, "Al", 26.982, 1.21, {} },
  { 14, "Si", 28.085, 1.11, {} },
  { 15, "P", 30.974, 1.07, V(kValP) },
  { 16, "S", 32.06, 1.05, V(kValS) },
  { 17, "Cl", 35.45, 1.02, V(kValHalogen) },
  { 18, "Ar", 39.948, 1.06, {} },
  { 19, "K", 39.098, 2.03, {} },
  { 20, "Ca", 40.078, 1.76, {} },
  { 21, "Sc", 44.956, 1.70, {} },
  { 22, "Ti", 47.867, 1.60, {} },
  { 23, "V", 50.942, 1.53, {} },
  { 24, "Cr", 51.996, 1.39, {} },
  { 25, "Mn", 54.938, 1.39, {} },
  { 26, "Fe", 55.845, 1.32, {} },
  { 27, "Co", 58.933, 1.26, {} },
  { 28, "Ni", 58.693, 1.24, {} },
  { 29, "Cu", 63.546, 1.32, {} },
  { 30, "Zn", 65.38, 1.22, {} },
  { 31, "Ga", 69.723, 1.22, {} },
  { 32, "Ge", 72.630, 1.20, {} },
  { 33, "As", 74.922, 1.19, {} },
  { 34, "Se", 78.971, 1.20, {} },
  { 35, "Br", 79.904, 1.20, V(kValHalogen) },
  { 36, "Kr", 83.798, 1.16, {} },
  { 37, "Rb", 85.468, 2.20, {} },
  { 38, "Sr", 87.62, 1.95, {} },
  { 39, "Y", 88.906, 1.90, {} },
  { 40, "Zr", 91.224, 1.75, {} },
  { 41, "Nb", 92.906, 1.64, {} },
  { 42, "Mo", 95.95, 1.54, {} },
  { 43, "Tc", 97.907, 1.47, {} },
  { 44, "Ru", 101.07, 1.46, {} },
  { 45, "Rh", 102.91, 1.42, {} },
  { 46, "Pd", 106.42, 1.39, {} },
  { 47, "Ag", 107.87, 1.45, {} },
  { 48, "Cd", 112.41, 1.44, {} },
  { 49, "In", 114.82, 1.42, {} },
  { 50, "Sn", 118.71, 1.39, {} },
  { 51, "Sb", 121.76, 1.39, {} },
  { 52, "Te", 127.60, 1.38, {} },
  { 53, "I", 126.90, 1.39, V(kValHalogen) },
  { 54, "Xe", 131.29, 1.40, {} },
} };

}  // namespace

const Element *find_element(std::string_view symbol) {
  for (const Element &e: kElements) {
    if (e.symbol == symbol)
      return &e;
  }
  return nullptr;
}

const Element &element(int atomic_number) {
  if (atomic_number < 1 || atomic_number > kMaxAtomicNumber)
    throw Error(ErrorCode::kInvalidArgument,
                "atomic number out of range: "
                    + std::to_string(atomic_number));
  return kElements[atomic_number - 1];
}

}  // namespace ccpred::mol
