//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_CHEMFEAT_FINGERPRINT_H_
#define CCPRED_CHEMFEAT_FINGERPRINT_H_

#include <bitset>
#include <cstddef>
#include <string>
#include <string_view>

#include "ccpred/molparse/molecule.h"

namespace ccpred::chem {

constexpr std::size_t kFingerprintBits = 167;
constexpr int kMaxPathAtoms = 6;

enum class FingerprintScheme { kHashedPaths, kInjected };

std::string_view to_string(FingerprintScheme scheme);

struct Fingerprint {
  std::bitset<kFingerprintBits> bits;
  FingerprintScheme scheme = FingerprintScheme::kHashedPaths;

  std::size_t count() const { return bits.count(); }

  // Character i is bit i.
  std::string to_bitstring() const;

  // Throws kParseError unless exactly 167 characters of '0'/'1'.
  static Fingerprint from_bitstring(std::string_view text,
                                    FingerprintScheme scheme
                                    = FingerprintScheme::kInjected);

  bool operator==(const Fingerprint &) const = default;
};

// Simple paths of 1..kMaxPathAtoms atoms, labeled by element and bond order,
// read in the lexicographically smaller direction and hashed into 167 buckets.
Fingerprint fingerprint(const mol::MolGraph &mol);

// |a & b| / |a | b|, 1.0 when both are empty. Throws kSchemeMismatch.
double tanimoto(const Fingerprint &a, const Fingerprint &b);

}  // namespace ccpred::chem

#endif  // CCPRED_CHEMFEAT_FINGERPRINT_H_
