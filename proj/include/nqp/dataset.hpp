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
#include "nqp/io.hpp"
#include "nqp/lindblad.hpp"
#include "nqp/rk4.hpp"
#include "nqp/sampling.hpp"
#include "nqp/time_grid.hpp"

namespace nqp {

struct Sample {
  DensityState initial;
  Trajectory trajectory;
};

/// Training/validation trajectories plus the seed that produced them.
/// Sample k of a dataset uses the derived RNG stream (seed, k), so parallel
/// and serial generation agree bit-exactly and the two splits are disjoint
/// by index.
struct Dataset {
  std::vector<Sample> train;
  std::vector<Sample> validation;
  std::uint64_t seed = 0;
  TimeGrid grid;
};

inline Dataset generate_dataset(const LindbladSystem& system, const TimeGrid& grid,
                                int n_train, int n_val, std::uint64_t seed) {
  if (n_train < 1 || n_val < 1)
    throw DomainError("generate_dataset: split sizes must be >= 1");
  Dataset ds;
  ds.seed = seed;
  ds.grid = grid;
  ds.train.resize(static_cast<std::size_t>(n_train));
  ds.validation.resize(static_cast<std::size_t>(n_val));

  const int total = n_train + n_val;
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < total; ++k) {
    DensityState s0 = sample_gue_density(system.dim(), derive_seed(seed, static_cast<std::uint64_t>(k)));
    Sample smp;
    smp.trajectory = propagate(system.liouvillian, s0, grid);
    smp.initial = std::move(s0);
    if (k < n_train)
      ds.train[static_cast<std::size_t>(k)] = std::move(smp);
    else
      ds.validation[static_cast<std::size_t>(k - n_train)] = std::move(smp);
  }
  return ds;
}

// ---------------------------------------------------------------------------
// Container format "NQPD1": magic, u64 header length, JSON header, then raw
// little-endian float64 payload. Each sample stores its initial state and
// every trajectory state as interleaved (re, im) pairs; offsets are relative
// to the payload start.
// ---------------------------------------------------------------------------

inline constexpr char kDatasetMagic[4] = {'N', 'Q', 'P', 'D'};

inline void save_dataset(const std::string& path, const Dataset& ds,
                         const nlohmann::ordered_json& system_json) {
  nlohmann::ordered_json header;
  header["format"] = "NQPD1";
  header["system"] = system_json;
  header["grid"] = {{"t_max", ds.grid.t_max}, {"n_steps", ds.grid.n_steps}};
  header["seed"] = ds.seed;
  header["n_train"] = ds.train.size();
  header["n_val"] = ds.validation.size();

  const Eigen::Index dim = ds.train.front().initial.dim;
  const std::size_t state_doubles = static_cast<std::size_t>(dim * dim) * 2;
  const std::size_t sample_bytes =
      sizeof(double) * state_doubles * (1 + static_cast<std::size_t>(ds.grid.n_points()));
  header["state_dim"] = dim;

  nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
  std::uint64_t offset = 0;
  auto add_entries = [&](const char* split, const std::vector<Sample>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      manifest.push_back({{"split", split}, {"index", i}, {"offset", offset},
                          {"bytes", sample_bytes}});
      offset += sample_bytes;
    }
  };
  add_entries("train", ds.train);
  add_entries("val", ds.validation);
  header["samples"] = manifest;

  const std::string htext = header.dump();
  std::ofstream os = open_out(path, true);
  write_bytes(os, kDatasetMagic, 4);
  write_u64(os, htext.size());
  write_bytes(os, htext.data(), htext.size());
  auto dump_samples = [&](const std::vector<Sample>& v) {
    for (const Sample& s : v) {
      write_complex_interleaved(os, s.initial.vec);
      for (const DensityState& st : s.trajectory.states) write_complex_interleaved(os, st.vec);
    }
  };
  dump_samples(ds.train);
  dump_samples(ds.validation);
}

struct LoadedDataset {
  Dataset dataset;
  nlohmann::json system_json;
};

inline LoadedDataset load_dataset(const std::string& path) {
  std::ifstream is = open_in(path, true);
  char magic[4];
  read_bytes(is, magic, 4);
  if (std::memcmp(magic, kDatasetMagic, 4) != 0)
    throw IoError("not a dataset container: " + path);
  const std::uint64_t hlen = read_u64(is);
  std::string htext(hlen, '\0');
  read_bytes(is, htext.data(), hlen);
  nlohmann::json header = nlohmann::json::parse(htext);
  if (header.at("format") != "NQPD1") throw IoError("unsupported dataset format");

  LoadedDataset out;
  out.system_json = header.at("system");
  Dataset& ds = out.dataset;
  ds.seed = header.at("seed").get<std::uint64_t>();
  ds.grid = TimeGrid(header.at("grid").at("t_max").get<double>(),
                     header.at("grid").at("n_steps").get<int>());
  const auto dim = header.at("state_dim").get<Eigen::Index>();
  const auto n_train = header.at("n_train").get<std::size_t>();
  const auto n_val = header.at("n_val").get<std::size_t>();

  auto read_sample = [&]() {
    Sample s;
    s.initial = DensityState(dim, read_complex_interleaved(is, dim * dim), true);
    s.trajectory.grid = ds.grid;
    s.trajectory.states.reserve(static_cast<std::size_t>(ds.grid.n_points()));
    for (int k = 0; k < ds.grid.n_points(); ++k)
      s.trajectory.states.emplace_back(dim, read_complex_interleaved(is, dim * dim), true);
    return s;
  };
  ds.train.reserve(n_train);
  for (std::size_t i = 0; i < n_train; ++i) ds.train.push_back(read_sample());
  ds.validation.reserve(n_val);
  for (std::size_t i = 0; i < n_val; ++i) ds.validation.push_back(read_sample());
  return out;
}

}  // namespace nqp
