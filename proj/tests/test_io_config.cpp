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

#include <catch2/catch_amalgamated.hpp>

#include "nqp/checkpoint.hpp"
#include "nqp/config.hpp"
#include "nqp/manifest.hpp"
#include "test_util.hpp"

using namespace nqp;

TEST_CASE("run config round trip is byte stable") {
  const RunConfig def;
  const std::string emitted = emit_config(def);
  const RunConfig parsed = parse_config_text(emitted);
  CHECK(emit_config(parsed) == emitted);

  // Mutate a few fields and confirm stability again.
  RunConfig other = parsed;
  other.seed = 42;
  other.backend = "expm";
  other.train.lr = 5e-4;
  const std::string e2 = emit_config(other);
  CHECK(emit_config(parse_config_text(e2)) == e2);
  CHECK(parse_config_text(e2).seed == 42);
}

TEST_CASE("unknown configuration keys are rejected") {
  const std::string good = emit_config(RunConfig{});
  CHECK_THROWS_AS(parse_config_text(R"({"sseed": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"grid": {"t_max": 30, "steps": 50}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"train": {"learning_rate": 0.1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("{nonsense"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"backend": "verlet"})"), ConfigError);
  CHECK_NOTHROW(parse_config_text(good));
}

TEST_CASE("system specs") {
  SECTION("built-in instance by name") {
    const SystemSpec spec = SystemSpec::from_json(Json{{"name", "fmo7"}});
    const LindbladSystem sys = spec.build();
    CHECK(sys.dim() == 7);
    CHECK(sys.hamiltonian.entries(0, 0).real() == 12410.0);
    CHECK(sys.dephasing_rates == std::vector<double>(7, 35.0));
  }
  SECTION("unknown name") {
    CHECK_THROWS_AS(SystemSpec::from_json(Json{{"name", "fmo9"}}).build(), ConfigError);
  }
  SECTION("inline matrix with real and [re, im] entries") {
    const auto j = Json::parse(R"({
      "hamiltonian": [[100.0, [0.0, -5.0]], [[0.0, 5.0], 200.0]],
      "dephasing_rates": [35.0, 35.0]})");
    const SystemSpec spec = SystemSpec::from_json(j);
    const LindbladSystem sys = spec.build();
    CHECK(sys.hamiltonian.entries(0, 1) == Complex(0.0, -5.0));
    CHECK(sys.hamiltonian.entries(1, 0) == Complex(0.0, 5.0));
    // Inline specs survive the config round trip.
    RunConfig c;
    c.system = spec;
    const std::string emitted = emit_config(c);
    CHECK(emit_config(parse_config_text(emitted)) == emitted);
  }
  SECTION("shape errors") {
    CHECK_THROWS_AS(SystemSpec::from_json(Json::parse(
                        R"({"hamiltonian": [[1, 2]], "dephasing_rates": [1]})")),
                    ConfigError);
    CHECK_THROWS_AS(SystemSpec::from_json(Json::parse(
                        R"({"hamiltonian": [[1]], "dephasing_rates": [1, 2]})")),
                    ConfigError);
  }
}

TEST_CASE("checkpoint round trip preserves every bit") {
  nqp_test::TempDir tmp;
  FnoConfig cfg;
  cfg.n_fourier_layers = 2;
  cfg.modes_kmax = 6;
  cfg.hidden_channels = 5;
  cfg.projection_hidden = 7;
  cfg.state_dim = 4;
  cfg.grid_points = 9;
  FnoParams params = init_params(cfg, 77);

  save_checkpoint(tmp.file("a.nqp1"), params, {{"note", "unit test"}});
  LoadedCheckpoint back = load_checkpoint(tmp.file("a.nqp1"));
  CHECK(back.params.config == cfg);
  CHECK(back.meta.at("note") == "unit test");

  std::vector<const MatrixXcd*> ta, tb;
  for_each_tensor(params, [&](const std::string&, MatrixXcd& t) { ta.push_back(&t); });
  for_each_tensor(back.params, [&](const std::string&, MatrixXcd& t) { tb.push_back(&t); });
  REQUIRE(ta.size() == tb.size());
  for (std::size_t i = 0; i < ta.size(); ++i)
    CHECK((*ta[i] - *tb[i]).cwiseAbs().maxCoeff() == 0.0);

  // Identical parameters serialize to identical bytes.
  save_checkpoint(tmp.file("b.nqp1"), params, {{"note", "unit test"}});
  CHECK(nqp_test::same_bytes(tmp.file("a.nqp1"), tmp.file("b.nqp1")));

  // Corrupted magic is rejected.
  std::string bytes = nqp_test::slurp(tmp.file("a.nqp1"));
  bytes[0] = 'X';
  {
    std::ofstream os(tmp.file("bad.nqp1"), std::ios::binary);
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  CHECK_THROWS_AS(load_checkpoint(tmp.file("bad.nqp1")), IoError);
}

TEST_CASE("manifest writes atomically into the run directory") {
  nqp_test::TempDir tmp;
  RunManifest m;
  m.command = "propagate";
  m.config_hash = fnv1a64_hex("config");
  m.outputs = {"populations.csv"};
  m.wall_seconds = 1.5;
  m.write(tmp.path().string());
  const std::string text = nqp_test::slurp(tmp.file("run_manifest.json"));
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("command") == "propagate");
  CHECK(j.at("outputs").at(0) == "populations.csv");
  CHECK(j.at("tool_version") == kVersion);
}

TEST_CASE("17-digit formatting round-trips doubles") {
  for (double x : {1.0 / 3.0, 0.6, 1e-8, 12410.0, -63.45, kHbarCmFs}) {
    const std::string s = format_g17(x);
    CHECK(std::stod(s) == x);
  }
}
