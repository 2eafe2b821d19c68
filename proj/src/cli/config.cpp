//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "ccpred/cli/cli.h"
#include "ccpred/core/error.h"
#include "ccpred/core/text.h"

namespace ccpred::cli {

ConfigEntries read_config(std::istream &in) {
  ConfigEntries out;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const std::string_view body = trim(line);
    if (body.empty())
      continue;
    const std::size_t eq = body.find('=');
    const std::string where = "config line " + std::to_string(lineno);
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::kParseError, where + ": expected key = value");
    std::string key(trim(body.substr(0, eq)));
    std::string value(trim(body.substr(eq + 1)));
    if (key.empty())
      throw Error(ErrorCode::kParseError, where + ": empty key");
    if (!seen.insert(key).second)
      throw Error(ErrorCode::kParseError,
                  where + ": key '" + key + "' repeated");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

ConfigEntries load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::kIoError, "cannot open config '" + path + "'");
  return read_config(in);
}

std::string resolve_checkpoint_path(const std::string &path) {
  const char *dir = std::getenv("CCPRED_CHECKPOINT_DIR");
  if (dir == nullptr || *dir == '\0' || path.empty())
    return path;
  const std::filesystem::path p(path);
  if (p.has_parent_path() || p.is_absolute())
    return path;
  return (std::filesystem::path(dir) / p).string();
}

}  // namespace ccpred::cli
