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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nqp/common.hpp"
#include "nqp/io.hpp"
#include "nqp/version.hpp"

namespace nqp {

/// Provenance record written at the end of every CLI run. Lives in a sidecar
/// so the numeric outputs themselves stay byte-reproducible.
struct RunManifest {
  std::string command;
  std::string config_hash;
  std::vector<std::pair<std::string, std::string>> input_hashes;  // (path, fnv64)
  std::vector<std::string> outputs;
  double wall_seconds = 0.0;

  void add_input(const std::string& path) {
    input_hashes.emplace_back(path, fnv1a64_hex(read_text_file(path)));
  }

  void write(const std::string& dir) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["tool_version"] = kVersion;
    j["config_hash"] = config_hash;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    for (const auto& [path, hash] : input_hashes)
      inputs.push_back({{"path", path}, {"fnv64", hash}});
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["wall_seconds"] = wall_seconds;
    std::filesystem::create_directories(dir);
    write_text_atomic((std::filesystem::path(dir) / "run_manifest.json").string(),
                      j.dump(2) + "\n");
  }
};

}  // namespace nqp
