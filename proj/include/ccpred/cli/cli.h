//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_CLI_CLI_H_
#define CCPRED_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ccpred::cli {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;

// Results go to out; logs and error reasons go to err.
int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err);
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

// "key = value" lines; '#' starts a comment. Throws kParseError for a line
// without '=' and for a repeated key.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;
ConfigEntries read_config(std::istream &in);
ConfigEntries load_config(const std::string &path);

// A bare file name resolves inside $CCPRED_CHECKPOINT_DIR when it is set.
std::string resolve_checkpoint_path(const std::string &path);

}  // namespace ccpred::cli

#endif  // CCPRED_CLI_CLI_H_
