// Copyright 2026 The NQP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nqp/common.hpp"
#include "nqp/fno.hpp"
#include "nqp/io.hpp"
#include "nqp/version.hpp"

namespace nqp {

// ---------------------------------------------------------------------------
// Checkpoint format "NQP1": 4-byte magic, u64 header length, JSON header
// (config, metadata, array manifest with name/shape/byte offsets), then one
// little-endian float64 array per manifest entry. Real and imaginary parts
// are separate arrays. Deliberately timestamp-free so identical runs produce
// identical files.
// ---------------------------------------------------------------------------

inline constexpr char kCheckpointMagic[4] = {'N', 'Q', 'P', '1'};

inline nlohmann::ordered_json fno_config_to_json(const FnoConfig& c) {
  return {{"n_fourier_layers", c.n_fourier_layers}, {"modes_kmax", c.modes_kmax},
          {"hidden_channels", c.hidden_channels},   {"projection_hidden", c.projection_hidden},
          {"state_dim", c.state_dim},               {"grid_points", c.grid_points}};
}

inline FnoConfig fno_config_from_json(const nlohmann::json& j) {
  FnoConfig c;
  c.n_fourier_layers = j.at("n_fourier_layers").get<int>();
  c.modes_kmax = j.at("modes_kmax").get<int>();
  c.hidden_channels = j.at("hidden_channels").get<int>();
  c.projection_hidden = j.at("projection_hidden").get<int>();
  c.state_dim = j.at("state_dim").get<int>();
  c.grid_points = j.at("grid_points").get<int>();
  c.validate();
  return c;
}

inline void save_checkpoint(const std::string& path, const FnoParams& params,
                            const nlohmann::ordered_json& meta = {}) {
  nlohmann::ordered_json header;
  header["format"] = "NQP1";
  header["config"] = fno_config_to_json(params.config);
  nlohmann::ordered_json m = meta.is_null() ? nlohmann::ordered_json::object() : meta;
  m["tool_version"] = kVersion;
  header["meta"] = m;

  nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
  std::uint64_t offset = 0;
  for_each_tensor(const_cast<FnoParams&>(params), [&](const std::string& name, MatrixXcd& t) {
    const std::uint64_t bytes = static_cast<std::uint64_t>(t.size()) * sizeof(double);
    manifest.push_back({{"name", name},
                        {"shape", {t.rows(), t.cols()}},
                        {"re_offset", offset},
                        {"im_offset", offset + bytes}});
    offset += 2 * bytes;
  });
  header["arrays"] = manifest;

  const std::string htext = header.dump();
  std::ofstream os = open_out(path, true);
  write_bytes(os, kCheckpointMagic, 4);
  write_u64(os, htext.size());
  write_bytes(os, htext.data(), htext.size());
  for_each_tensor(const_cast<FnoParams&>(params), [&](const std::string&, MatrixXcd& t) {
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(t.size()));
    im.reserve(static_cast<std::size_t>(t.size()));
    for (Eigen::Index j = 0; j < t.cols(); ++j)
      for (Eigen::Index i = 0; i < t.rows(); ++i) {
        re.push_back(t(i, j).real());
        im.push_back(t(i, j).imag());
      }
    write_bytes(os, re.data(), re.size() * sizeof(double));
    write_bytes(os, im.data(), im.size() * sizeof(double));
  });
}

struct LoadedCheckpoint {
  FnoParams params;
  nlohmann::json meta;
};

inline LoadedCheckpoint load_checkpoint(const std::string& path) {
  std::ifstream is = open_in(path, true);
  char magic[4];
  read_bytes(is, magic, 4);
  if (std::memcmp(magic, kCheckpointMagic, 4) != 0)
    throw IoError("not an NQP1 checkpoint: " + path);
  const std::uint64_t hlen = read_u64(is);
  std::string htext(hlen, '\0');
  read_bytes(is, htext.data(), hlen);
  const nlohmann::json header = nlohmann::json::parse(htext);
  if (header.at("format") != "NQP1") throw IoError("unsupported checkpoint format");

  LoadedCheckpoint out;
  out.meta = header.value("meta", nlohmann::json::object());
  const FnoConfig config = fno_config_from_json(header.at("config"));
  out.params = init_params(config, 0);  // shapes only; data overwritten below

  // Arrays were written in traversal order, so stream straight through.
  std::size_t idx = 0;
  const auto& manifest = header.at("arrays");
  for_each_tensor(out.params, [&](const std::string& name, MatrixXcd& t) {
    const auto& entry = manifest.at(idx++);
    if (entry.at("name") != name) throw IoError("checkpoint manifest order mismatch at " + name);
    const auto rows = entry.at("shape").at(0).get<Eigen::Index>();
    const auto cols = entry.at("shape").at(1).get<Eigen::Index>();
    if (rows != t.rows() || cols != t.cols())
      throw IoError("checkpoint tensor shape mismatch at " + name);
    std::vector<double> re(static_cast<std::size_t>(t.size()));
    std::vector<double> im(static_cast<std::size_t>(t.size()));
    read_bytes(is, re.data(), re.size() * sizeof(double));
    read_bytes(is, im.data(), im.size() * sizeof(double));
    std::size_t p = 0;
    for (Eigen::Index j = 0; j < t.cols(); ++j)
      for (Eigen::Index i = 0; i < t.rows(); ++i, ++p) t(i, j) = Complex(re[p], im[p]);
  });
  return out;
}

/// Fingerprint of a file's bytes, recorded in sidecar metadata.
inline std::string file_fingerprint(const std::string& path) {
  return fnv1a64_hex(read_text_file(path));
}

}  // namespace nqp
