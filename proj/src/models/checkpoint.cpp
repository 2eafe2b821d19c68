//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ccpred/models/checkpoint.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "ccpred/core/error.h"
#include "ccpred/graphrep/codebook.h"
#include "json.hpp"

namespace ccpred::model {

static_assert(std::endian::native == std::endian::little,
              "checkpoint payload is written in host byte order");

namespace {

using nlohmann::json;
using nn::Tensor;

constexpr char kMagic[8] = { 'C', 'C', 'P', 'R', 'E', 'D', 'C', 'K' };

struct NamedTensor {
  std::string name;
  const Tensor *value;
};

std::uint64_t fnv1a(const std::string &bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c: bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

[[noreturn]] void corrupt(const std::string &msg) {
  throw Error(ErrorCode::kCorruptFile, "checkpoint: " + msg);
}

template <class T>
void put(std::string &out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

std::string encode(json header, const std::vector<NamedTensor> &tensors) {
  json list = json::array();
  for (const NamedTensor &t: tensors)
    list.push_back({ { "name", t.name }, { "rows", t.value->rows() },
                     { "cols", t.value->cols() } });
  header["tensors"] = std::move(list);
  const std::string text = header.dump();
  std::string out(kMagic, sizeof(kMagic));
  put(out, static_cast<std::uint32_t>(text.size()));
  out += text;
  for (const NamedTensor &t: tensors) {
    out.append(reinterpret_cast<const char *>(t.value->data()),
               t.value->size() * sizeof(double));
  }
  put(out, fnv1a(out));
  return out;
}

struct Decoded {
  json header;
  std::map<std::string, Tensor, std::less<>> tensors;
};

Decoded decode(const std::string &bytes) {
  const std::size_t fixed = sizeof(kMagic) + sizeof(std::uint32_t);
  if (bytes.size() < fixed + sizeof(std::uint64_t))
    corrupt("file too short (" + std::to_string(bytes.size()) + " bytes)");
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0)
    corrupt("bad magic");
  std::uint32_t hlen;
  std::memcpy(&hlen, bytes.data() + sizeof(kMagic), sizeof(hlen));
  if (bytes.size() < fixed + hlen + sizeof(std::uint64_t))
    corrupt("truncated header");
  std::uint64_t stored;
  std::memcpy(&stored, bytes.data() + bytes.size() - sizeof(stored),
              sizeof(stored));
  const std::string body = bytes.substr(0, bytes.size() - sizeof(stored));
  Decoded d;
  try {
    d.header = json::parse(body.substr(fixed, hlen));
  } catch (const json::exception &e) {
    corrupt(std::string("malformed header: ") + e.what());
  }
  // Version problems are reported ahead of checksum problems so an old but
  // intact file gets the more useful message.
  try {
    const int fv = d.header.at("format_version").get<int>();
    if (fv != kCheckpointFormatVersion)
      throw Error(ErrorCode::kVersionMismatch,
                  "checkpoint format " + std::to_string(fv) + ", expected "
                    + std::to_string(kCheckpointFormatVersion));
    const std::string cb = d.header.at("codebook_version").get<std::string>();
    if (cb != graph::kCodebookVersion)
      throw Error(ErrorCode::kVersionMismatch,
                  "checkpoint codebook '" + cb + "', this build uses '"
                    + std::string(graph::kCodebookVersion) + "'");
  } catch (const json::exception &e) {
    corrupt(std::string("header field: ") + e.what());
  }
  if (fnv1a(body) != stored)
    corrupt("checksum mismatch");
  std::size_t pos = fixed + hlen;
  try {
    for (const json &t: d.header.at("tensors")) {
      const std::size_t rows = t.at("rows").get<std::size_t>();
      const std::size_t cols = t.at("cols").get<std::size_t>();
      const std::size_t n = rows * cols * sizeof(double);
      if (pos + n > body.size())
        corrupt("payload shorter than the tensor list");
      Tensor v(rows, cols);
      std::memcpy(v.data(), body.data() + pos, n);
      pos += n;
      d.tensors.emplace(t.at("name").get<std::string>(), std::move(v));
    }
  } catch (const json::exception &e) {
    corrupt(std::string("tensor list: ") + e.what());
  }
  if (pos != body.size())
    corrupt("trailing bytes after payload");
  return d;
}

const Tensor &tensor(const Decoded &d, const std::string &name,
                     std::size_t rows, std::size_t cols) {
  auto it = d.tensors.find(name);
  if (it == d.tensors.end())
    corrupt("missing tensor '" + name + "'");
  if (it->second.rows() != rows || it->second.cols() != cols)
    corrupt("tensor '" + name + "' has shape " + it->second.shape_string());
  return it->second;
}

Tensor row_of(const std::vector<double> &v) {
  return Tensor(1, v.size(), v);
}

void add_norm(std::vector<NamedTensor> &out, std::vector<Tensor> &store,
              const std::string &prefix, const Standardizer &s) {
  store.push_back(row_of(s.mean));
  store.push_back(row_of(s.std));
  out.push_back({ prefix + "/mean", nullptr });
  out.push_back({ prefix + "/std", nullptr });
}

Standardizer read_norm(const Decoded &d, const std::string &prefix,
                       std::size_t width) {
  const Tensor &m = tensor(d, prefix + "/mean", 1, width);
  const Tensor &s = tensor(d, prefix + "/std", 1, width);
  return { m.values(), s.values() };
}

json config_json(const QGeoGNNConfig &c) {
  return { { "num_layers", c.num_layers },
           { "embed_dim", c.embed_dim },
           { "quantiles", c.quantiles },
           { "batch_size", c.batch_size },
           { "max_epochs", c.max_epochs },
           { "lr", c.lr },
           { "early_stop_patience", c.early_stop_patience },
           { "seed", c.seed },
           { "lr_step_size", c.lr_step_size },
           { "lr_gamma", c.lr_gamma },
           { "final_lr", c.final_lr },
           { "micro_batch", c.micro_batch },
           { "calibrate_intervals", c.calibrate_intervals } };
}

QGeoGNNConfig config_from(const json &j) {
  QGeoGNNConfig c;
  c.num_layers = j.at("num_layers").get<int>();
  c.embed_dim = j.at("embed_dim").get<int>();
  c.quantiles = j.at("quantiles").get<std::vector<double>>();
  c.batch_size = j.at("batch_size").get<int>();
  c.max_epochs = j.at("max_epochs").get<int>();
  c.lr = j.at("lr").get<double>();
  c.early_stop_patience = j.at("early_stop_patience").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.lr_step_size = j.at("lr_step_size").get<int>();
  c.lr_gamma = j.at("lr_gamma").get<double>();
  c.final_lr = j.at("final_lr").get<double>();
  c.micro_batch = j.at("micro_batch").get<int>();
  c.calibrate_intervals = j.at("calibrate_intervals").get<bool>();
  return c;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string &path, const std::string &bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw Error(ErrorCode::kIoError, "write to '" + path + "' failed");
}

std::string encode_qgeognn(const QGeoGNN &model) {
  const TrainMetadata &m = model.metadata();
  json header = {
    { "format_version", kCheckpointFormatVersion },
    { "kind", "qgeognn" },
    { "codebook_version", std::string(graph::kCodebookVersion) },
    { "config", config_json(model.config()) },
    { "metadata",
      { { "epochs_run", m.epochs_run },
        { "best_epoch", m.best_epoch },
        { "best_val_loss", m.best_val_loss },
        { "seed", m.seed },
        { "train_size", m.train_size },
        { "val_size", m.val_size },
        { "parent", m.parent } } },
  };
  std::vector<NamedTensor> list;
  std::vector<Tensor> store;
  store.reserve(7);
  const Normalization &n = model.normalization();
  add_norm(list, store, "norm/target", n.target);
  add_norm(list, store, "norm/descriptors", n.descriptors);
  add_norm(list, store, "norm/conditions", n.conditions);
  const auto &scale = model.interval_scale();
  store.push_back(Tensor(1, 2, { scale[0], scale[1] }));
  list.push_back({ "calib/interval_scale", nullptr });
  for (std::size_t i = 0; i < store.size(); ++i)
    list[i].value = &store[i];
  for (const nn::Parameter &p: model.params())
    list.push_back({ p.name, &p.value });
  return encode(std::move(header), list);
}

QGeoGNN decode_qgeognn(const std::string &bytes) {
  Decoded d = decode(bytes);
  try {
    if (d.header.at("kind").get<std::string>() != "qgeognn")
      corrupt("not a QGeoGNN checkpoint");
    Normalization norm { read_norm(d, "norm/target", 2),
                         read_norm(d, "norm/descriptors",
                                   chem::kNumDescriptors),
                         read_norm(d, "norm/conditions",
                                   graph::kConditionWidth) };
    QGeoGNN model(config_from(d.header.at("config")), std::move(norm));
    for (nn::Parameter &p: model.params())
      p.value = tensor(d, p.name, p.value.rows(), p.value.cols());
    const Tensor &scale = tensor(d, "calib/interval_scale", 1, 2);
    model.set_interval_scale({ scale[0], scale[1] });
    const json &m = d.header.at("metadata");
    TrainMetadata &meta = model.metadata();
    meta.epochs_run = m.at("epochs_run").get<int>();
    meta.best_epoch = m.at("best_epoch").get<int>();
    meta.best_val_loss = m.at("best_val_loss").get<double>();
    meta.seed = m.at("seed").get<std::uint64_t>();
    meta.train_size = m.at("train_size").get<std::size_t>();
    meta.val_size = m.at("val_size").get<std::size_t>();
    meta.parent = m.at("parent").get<std::string>();
    return model;
  } catch (const json::exception &e) {
    corrupt(std::string("header field: ") + e.what());
  }
}

}  // namespace

void write_checkpoint(std::ostream &os, const QGeoGNN &model) {
  const std::string bytes = encode_qgeognn(model);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os)
    throw Error(ErrorCode::kIoError, "checkpoint write failed");
}

void save_checkpoint(const std::string &path, const QGeoGNN &model) {
  write_file(path, encode_qgeognn(model));
}

QGeoGNN read_checkpoint(std::istream &is) {
  return decode_qgeognn(std::string(std::istreambuf_iterator<char>(is), {}));
}

QGeoGNN load_checkpoint(const std::string &path) {
  return decode_qgeognn(read_file(path));
}

void save_baseline(const std::string &path, const BaselineMLP &model) {
  const BaselineMLPConfig &c = model.config();
  json header = {
    { "format_version", kCheckpointFormatVersion },
    { "kind", "baseline" },
    { "codebook_version", std::string(graph::kCodebookVersion) },
    { "config",
      { { "hidden_layers", c.hidden_layers },
        { "hidden_units", c.hidden_units },
        { "leaky_slope", c.leaky_slope },
        { "lr", c.lr },
        { "max_epochs", c.max_epochs },
        { "early_stop_patience", c.early_stop_patience },
        { "batch_size", c.batch_size },
        { "seed", c.seed } } },
    { "metadata", json::object() },
  };
  std::vector<NamedTensor> list;
  std::vector<Tensor> store;
  store.reserve(4);
  add_norm(list, store, "norm/inputs", model.input_norm());
  add_norm(list, store, "norm/targets", model.target_norm());
  for (std::size_t i = 0; i < store.size(); ++i)
    list[i].value = &store[i];
  for (const nn::Parameter &p: const_cast<BaselineMLP &>(model).params())
    list.push_back({ p.name, &p.value });
  write_file(path, encode(std::move(header), list));
}

BaselineMLP load_baseline(const std::string &path) {
  Decoded d = decode(read_file(path));
  try {
    if (d.header.at("kind").get<std::string>() != "baseline")
      corrupt("not a baseline checkpoint");
    const json &j = d.header.at("config");
    BaselineMLPConfig c;
    c.hidden_layers = j.at("hidden_layers").get<int>();
    c.hidden_units = j.at("hidden_units").get<int>();
    c.leaky_slope = j.at("leaky_slope").get<double>();
    c.lr = j.at("lr").get<double>();
    c.max_epochs = j.at("max_epochs").get<int>();
    c.early_stop_patience = j.at("early_stop_patience").get<int>();
    c.batch_size = j.at("batch_size").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    BaselineMLP model(c, read_norm(d, "norm/inputs", kBaselineWidth),
                      read_norm(d, "norm/targets", 2));
    for (nn::Parameter &p: model.params())
      p.value = tensor(d, p.name, p.value.rows(), p.value.cols());
    return model;
  } catch (const json::exception &e) {
    corrupt(std::string("header field: ") + e.what());
  }
}

std::string checkpoint_kind(const std::string &path) {
  Decoded d = decode(read_file(path));
  try {
    return d.header.at("kind").get<std::string>();
  } catch (const json::exception &e) {
    corrupt(std::string("header field: ") + e.what());
  }
}

}  // namespace ccpred::model
