//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_CHEMFEAT_OVERRIDES_H_
#define CCPRED_CHEMFEAT_OVERRIDES_H_

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>

#include "ccpred/chemfeat/descriptors.h"
#include "ccpred/chemfeat/fingerprint.h"

namespace ccpred::chem {

struct FeatureOverride {
  DescriptorOverrides descriptors;
  std::optional<Fingerprint> fingerprint;  // scheme kInjected
};

// Keyed by the SMILES text exactly as written in the file.
using OverrideTable = std::map<std::string, FeatureOverride, std::less<>>;

// Comma-separated. Header: "smiles" followed by any subset of
// descriptor_names() and an optional "fingerprint" column holding a
// 167-character 0/1 string. Empty cells leave the value computed.
//
// Throws kUnknownOverrideKey for other columns, kParseError for bad cells.
OverrideTable read_overrides(std::istream &in);
OverrideTable load_overrides(const std::filesystem::path &path);

}  // namespace ccpred::chem

#endif  // CCPRED_CHEMFEAT_OVERRIDES_H_
