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

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "nqp/common.hpp"
#include "nqp/fno.hpp"
#include "nqp/lindblad.hpp"
#include "nqp/time_grid.hpp"
#include "nqp/train.hpp"

namespace nqp {

using Json = nlohmann::ordered_json;

namespace detail {

inline void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
  for (const auto& item : obj.items())
    if (!allowed.contains(item.key()))
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
  throw ConfigError("matrix entries must be numbers or [re, im] pairs");
}

}  // namespace detail

/// Either the built-in instance by name or an inline Hamiltonian (cm^-1,
/// real or [re, im] entries) with per-site dephasing rates (cm^-1).
struct SystemSpec {
  std::string name = "fmo7";       // empty for inline systems
  MatrixXcd hamiltonian;           // used when name is empty
  std::vector<double> dephasing_rates;

  LindbladSystem build(std::vector<std::string>* warnings = nullptr) const {
    if (!name.empty()) {
      if (name == "fmo7") return fmo7_system(warnings);
      throw ConfigError("unknown system name '" + name + "'");
    }
    return make_system(HermitianOperator(hamiltonian), dephasing_rates);
  }

  Json to_json() const {
    if (!name.empty()) return Json{{"name", name}};
    Json h = Json::array();
    for (Eigen::Index i = 0; i < hamiltonian.rows(); ++i) {
      Json row = Json::array();
      for (Eigen::Index j = 0; j < hamiltonian.cols(); ++j) {
        const Complex z = hamiltonian(i, j);
        if (z.imag() == 0.0)
          row.push_back(z.real());
        else
          row.push_back(Json::array({z.real(), z.imag()}));
      }
      h.push_back(row);
    }
    return Json{{"hamiltonian", h}, {"dephasing_rates", dephasing_rates}};
  }

  static SystemSpec from_json(const Json& j) {
    detail::reject_unknown_keys(j, {"name", "hamiltonian", "dephasing_rates"}, "system");
    SystemSpec s;
    if (j.contains("name")) {
      s.name = j.at("name").get<std::string>();
      if (j.contains("hamiltonian") || j.contains("dephasing_rates"))
        throw ConfigError("system: give either a name or an inline matrix, not both");
      return s;
    }
    s.name.clear();
    const Json& h = j.at("hamiltonian");
    const auto n = static_cast<Eigen::Index>(h.size());
    s.hamiltonian.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Json& row = h.at(static_cast<std::size_t>(i));
      if (static_cast<Eigen::Index>(row.size()) != n)
        throw ConfigError("system.hamiltonian must be square");
      for (Eigen::Index k = 0; k < n; ++k)
        s.hamiltonian(i, k) = detail::complex_from_json(row.at(static_cast<std::size_t>(k)));
    }
    s.dephasing_rates = j.at("dephasing_rates").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(s.dephasing_rates.size()) != n)
      throw ConfigError("system.dephasing_rates length must match the matrix dimension");
    return s;
  }
};

struct RunConfig {
  SystemSpec system;
  TimeGrid grid{30.0, 50};
  FnoConfig fno;        // state_dim/grid_points derived at build time
  TrainConfig train;
  int n_train = 200;
  int n_val = 200;
  std::string backend = "rk4";
  std::string output_dir = "out";
  std::uint64_t seed = 0;

  /// FNO configuration completed with the system- and grid-derived sizes.
  FnoConfig fno_for(Eigen::Index dim) const {
    FnoConfig c = fno;
    c.state_dim = static_cast<int>(dim * dim);
    c.grid_points = grid.n_points();
    return c;
  }
};

inline Json run_config_to_json(const RunConfig& c) {
  Json j;
  j["system"] = c.system.to_json();
  j["grid"] = {{"t_max", c.grid.t_max}, {"n_steps", c.grid.n_steps}};
  j["fno"] = {{"n_fourier_layers", c.fno.n_fourier_layers},
              {"modes_kmax", c.fno.modes_kmax},
              {"hidden_channels", c.fno.hidden_channels},
              {"projection_hidden", c.fno.projection_hidden}};
  j["train"] = {{"epochs", c.train.epochs},
                {"batch_size", c.train.batch_size},
                {"lr", c.train.lr},
                {"adam_beta1", c.train.adam_beta1},
                {"adam_beta2", c.train.adam_beta2},
                {"adam_eps", c.train.adam_eps},
                {"physics_weight", c.train.physics_weight},
                {"onthefly_samples", c.train.onthefly_samples},
                {"checkpoint_interval", c.train.checkpoint_interval},
                {"val_interval", c.train.val_interval}};
  j["data"] = {{"n_train", c.n_train}, {"n_val", c.n_val}};
  j["backend"] = c.backend;
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  return j;
}

inline RunConfig run_config_from_json(const Json& j) {
  detail::reject_unknown_keys(
      j, {"system", "grid", "fno", "train", "data", "backend", "output_dir", "seed"},
      "config");
  RunConfig c;
  if (j.contains("system")) c.system = SystemSpec::from_json(j.at("system"));
  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    detail::reject_unknown_keys(g, {"t_max", "n_steps"}, "grid");
    c.grid = TimeGrid(g.value("t_max", 30.0), g.value("n_steps", 50));
  }
  if (j.contains("fno")) {
    const Json& f = j.at("fno");
    detail::reject_unknown_keys(
        f, {"n_fourier_layers", "modes_kmax", "hidden_channels", "projection_hidden"}, "fno");
    c.fno.n_fourier_layers = f.value("n_fourier_layers", c.fno.n_fourier_layers);
    c.fno.modes_kmax = f.value("modes_kmax", c.fno.modes_kmax);
    c.fno.hidden_channels = f.value("hidden_channels", c.fno.hidden_channels);
    c.fno.projection_hidden = f.value("projection_hidden", c.fno.projection_hidden);
  }
  if (j.contains("train")) {
    const Json& t = j.at("train");
    detail::reject_unknown_keys(t,
                                {"epochs", "batch_size", "lr", "adam_beta1", "adam_beta2",
                                 "adam_eps", "physics_weight", "onthefly_samples",
                                 "checkpoint_interval", "val_interval"},
                                "train");
    c.train.epochs = t.value("epochs", c.train.epochs);
    c.train.batch_size = t.value("batch_size", c.train.batch_size);
    c.train.lr = t.value("lr", c.train.lr);
    c.train.adam_beta1 = t.value("adam_beta1", c.train.adam_beta1);
    c.train.adam_beta2 = t.value("adam_beta2", c.train.adam_beta2);
    c.train.adam_eps = t.value("adam_eps", c.train.adam_eps);
    c.train.physics_weight = t.value("physics_weight", c.train.physics_weight);
    c.train.onthefly_samples = t.value("onthefly_samples", c.train.onthefly_samples);
    c.train.checkpoint_interval = t.value("checkpoint_interval", c.train.checkpoint_interval);
    c.train.val_interval = t.value("val_interval", c.train.val_interval);
  }
  if (j.contains("data")) {
    const Json& d = j.at("data");
    detail::reject_unknown_keys(d, {"n_train", "n_val"}, "data");
    c.n_train = d.value("n_train", c.n_train);
    c.n_val = d.value("n_val", c.n_val);
  }
  c.backend = j.value("backend", c.backend);
  if (c.backend != "rk4" && c.backend != "expm" && c.backend != "fno")
    throw ConfigError("backend must be one of rk4, expm, fno");
  c.output_dir = j.value("output_dir", c.output_dir);
  c.seed = j.value("seed", c.seed);
  return c;
}

inline std::string emit_config(const RunConfig& c) { return run_config_to_json(c).dump(2) + "\n"; }

inline RunConfig parse_config_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return run_config_from_json(j);
}

}  // namespace nqp
