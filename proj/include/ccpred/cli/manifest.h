//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_CLI_MANIFEST_H_
#define CCPRED_CLI_MANIFEST_H_

#include <map>
#include <string>
#include <vector>

namespace ccpred::cli {

// Lowercase hex. Throws kIoError.
std::string sha256_file(const std::string &path);
std::string sha256_bytes(const std::string &bytes);

struct Manifest {
  std::string subcommand;
  std::map<std::string, std::string> config;  // resolved option values
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

// Writes <primary output>.manifest.json with the config and the SHA-256 of
// every input and output; returns its path.
std::string write_manifest(const Manifest &manifest);

}  // namespace ccpred::cli

#endif  // CCPRED_CLI_MANIFEST_H_
