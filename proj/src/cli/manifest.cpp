//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/cli/manifest.h"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include "ccpred/core/error.h"
#include "ccpred/graphrep/codebook.h"
#include "ccpred/models/checkpoint.h"
#include "json.hpp"

namespace ccpred::cli {

namespace {

using Digest = std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)>;

Digest new_digest() {
  Digest ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::kIoError, "SHA-256 unavailable");
  return ctx;
}

std::string finish(Digest &ctx) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md {};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1)
    throw Error(ErrorCode::kIoError, "SHA-256 failed");
  static const char *hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

}  // namespace

std::string sha256_bytes(const std::string &bytes) {
  Digest ctx = new_digest();
  EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size());
  return finish(ctx);
}

std::string sha256_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  Digest ctx = new_digest();
  std::array<char, 1 << 16> buf {};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0)
      EVP_DigestUpdate(ctx.get(), buf.data(),
                       static_cast<std::size_t>(in.gcount()));
  }
  return finish(ctx);
}

std::string write_manifest(const Manifest &manifest) {
  if (manifest.outputs.empty())
    throw Error(ErrorCode::kInvalidArgument, "manifest needs an output");
  nlohmann::ordered_json j;
  j["subcommand"] = manifest.subcommand;
  j["codebook_version"] = std::string(graph::kCodebookVersion);
  j["checkpoint_format_version"] = model::kCheckpointFormatVersion;
  j["config"] = manifest.config;
  auto files = [](const std::vector<std::string> &paths) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const std::string &p: paths)
      arr.push_back({ { "path", p }, { "sha256", sha256_file(p) } });
    return arr;
  };
  j["inputs"] = files(manifest.inputs);
  j["outputs"] = files(manifest.outputs);
  const std::string path = manifest.outputs.front() + ".manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out)
    throw Error(ErrorCode::kIoError, "write failed for '" + path + "'");
  return path;
}

}  // namespace ccpred::cli
