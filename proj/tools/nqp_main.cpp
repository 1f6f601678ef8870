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

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nqp/checkpoint.hpp"
#include "nqp/config.hpp"
#include "nqp/csv_out.hpp"
#include "nqp/dataset.hpp"
#include "nqp/manifest.hpp"
#include "nqp/spectrum.hpp"
#include "nqp/tcf.hpp"
#include "nqp/train.hpp"
#include "nqp/version.hpp"

namespace fs = std::filesystem;
using namespace nqp;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string output_dir;
  int threads = 0;
  std::optional<std::uint64_t> seed;
};

RunConfig load_config(const CommonOpts& opts) {
  RunConfig cfg;
  if (!opts.config_path.empty()) cfg = parse_config_text(read_text_file(opts.config_path));
  if (opts.seed) cfg.seed = *opts.seed;
  return cfg;
}

std::string resolve_output_dir(const CommonOpts& opts, const RunConfig& cfg) {
  if (!opts.output_dir.empty()) return opts.output_dir;
  if (const char* env = std::getenv("NQP_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

MatrixXcd matrix_from_json_file(const std::string& path) {
  const auto j = Json::parse(read_text_file(path));
  const Json& rows = j.is_object() ? j.at("matrix") : j;
  const auto n = static_cast<Eigen::Index>(rows.size());
  MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = rows.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != n)
      throw ConfigError("matrix file must hold a square matrix: " + path);
    for (Eigen::Index k = 0; k < n; ++k)
      m(i, k) = detail::complex_from_json(row.at(static_cast<std::size_t>(k)));
  }
  return m;
}

/// `site:k` (1-based), `mixed`, or `file:<json>` with an N x N matrix.
DensityState parse_state_spec(const std::string& spec, Eigen::Index dim) {
  if (spec.rfind("site:", 0) == 0) {
    const int site = std::stoi(spec.substr(5));
    if (site < 1 || site > dim) throw ConfigError("state site out of range: " + spec);
    MatrixXcd m = MatrixXcd::Zero(dim, dim);
    m(site - 1, site - 1) = 1.0;
    return DensityState::from_matrix(m, true);
  }
  if (spec == "mixed")
    return DensityState::from_matrix(
        MatrixXcd::Identity(dim, dim) / static_cast<double>(dim), true);
  if (spec.rfind("file:", 0) == 0) {
    const MatrixXcd m = matrix_from_json_file(spec.substr(5));
    if (m.rows() != dim) throw ConfigError("state matrix dimension does not match the system");
    return DensityState::from_matrix(m, true);
  }
  throw ConfigError("unknown state spec '" + spec + "' (want site:k, mixed or file:<path>)");
}

HermitianOperator parse_observable(const std::string& spec, Eigen::Index dim) {
  if (spec == "hopping") return hopping_operator(dim);
  if (spec == "identity") return HermitianOperator(MatrixXcd::Identity(dim, dim));
  if (spec.rfind("file:", 0) == 0) {
    const MatrixXcd m = matrix_from_json_file(spec.substr(5));
    if (m.rows() != dim)
      throw ConfigError("observable matrix dimension does not match the system");
    return HermitianOperator(m);
  }
  throw ConfigError("unknown observable '" + spec + "' (want hopping, identity or file:<path>)");
}

struct BackendBundle {
  std::unique_ptr<PropagatorBackend> backend;
  std::string checkpoint_hash;  // empty unless fno
};

BackendBundle make_backend(const std::string& kind, const LindbladSystem& system,
                           const TimeGrid& grid, const std::string& checkpoint_path) {
  BackendBundle b;
  if (kind == "rk4") {
    b.backend = std::make_unique<Rk4Backend>(system.liouvillian, grid);
  } else if (kind == "expm") {
    b.backend = std::make_unique<ExpmBackend>(system.liouvillian, grid);
  } else if (kind == "fno") {
    if (checkpoint_path.empty()) throw ConfigError("the fno backend needs --checkpoint");
    LoadedCheckpoint ckpt = load_checkpoint(checkpoint_path);
    if (ckpt.params.config.state_dim != system.dim() * system.dim())
      throw ConfigError("checkpoint state dimension does not match the system");
    if (ckpt.params.config.grid_points != grid.n_points())
      throw ConfigError("checkpoint grid does not match the requested grid");
    b.checkpoint_hash = file_fingerprint(checkpoint_path);
    b.backend = std::make_unique<FnoBackend>(std::move(ckpt.params), grid);
  } else {
    throw ConfigError("unknown backend '" + kind + "'");
  }
  return b;
}

Json grid_json(const TimeGrid& g) { return Json{{"t_max", g.t_max}, {"n_steps", g.n_steps}}; }

void write_sidecar(const std::string& out_path, const Json& meta) {
  write_text_atomic(out_path + ".meta.json", meta.dump(2) + "\n");
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_gen_data(const CommonOpts& common, std::string out_path, int n_train, int n_val) {
  Timer timer;
  RunConfig cfg = load_config(common);
  if (n_train > 0) cfg.n_train = n_train;
  if (n_val > 0) cfg.n_val = n_val;
  const std::string out_dir = resolve_output_dir(common, cfg);
  fs::create_directories(out_dir);
  if (out_path.empty()) out_path = (fs::path(out_dir) / "dataset.nqpd").string();

  const LindbladSystem system = cfg.system.build();
  const Dataset ds = generate_dataset(system, cfg.grid, cfg.n_train, cfg.n_val, cfg.seed);
  save_dataset(out_path, ds, cfg.system.to_json());

  std::cout << "wrote " << ds.train.size() << " training + " << ds.validation.size()
            << " validation samples to " << out_path << "\n"
            << "grid: " << cfg.grid.n_points() << " points over " << cfg.grid.t_max
            << " fs (dt = " << cfg.grid.dt() << " fs), system dim " << system.dim() << "\n";

  RunManifest manifest;
  manifest.command = "gen-data";
  manifest.config_hash = fnv1a64_hex(emit_config(cfg));
  if (!common.config_path.empty()) manifest.add_input(common.config_path);
  manifest.outputs = {out_path};
  manifest.wall_seconds = timer.seconds();
  manifest.write(out_dir);
  return 0;
}

int cmd_train(const CommonOpts& common, const std::string& dataset_path, std::string out_dir_flag,
              int epochs_override, bool resume) {
  Timer timer;
  RunConfig cfg = load_config(common);
  if (epochs_override >= 0) cfg.train.epochs = epochs_override;
  cfg.train.seed = cfg.seed;
  const std::string base_dir = resolve_output_dir(common, cfg);
  const std::string out_dir =
      out_dir_flag.empty() ? (fs::path(base_dir) / "train").string() : out_dir_flag;
  fs::create_directories(out_dir);

  const LoadedDataset loaded = load_dataset(dataset_path);
  const LindbladSystem system = SystemSpec::from_json(loaded.system_json).build();
  if (!(loaded.dataset.grid == cfg.grid))
    throw ConfigError("dataset grid does not match the configured grid");
  const FnoConfig fno_cfg = cfg.fno_for(system.dim());

  ResumeState resume_state;
  const ResumeState* resume_ptr = nullptr;
  if (resume) {
    resume_state = detail::load_resume(out_dir);
    resume_ptr = &resume_state;
    std::cout << "resuming from epoch " << resume_state.epoch << "\n";
  }

  const TrainResult result = train(
      fno_cfg, cfg.train, loaded.dataset, system.liouvillian, out_dir, resume_ptr,
      [](int epoch, double l_data, double l_phys, double val) {
        std::cout << "epoch " << epoch << "  l_data " << l_data << "  l_phys " << l_phys;
        if (std::isfinite(val)) std::cout << "  val " << val;
        std::cout << "\n";
      });

  const std::string final_path = (fs::path(out_dir) / "final.nqp1").string();
  nlohmann::ordered_json meta;
  meta["epochs"] = cfg.train.epochs;
  meta["seed"] = cfg.train.seed;
  save_checkpoint(final_path, result.final_params, meta);
  const std::string best_path = (fs::path(out_dir) / "best.nqp1").string();
  if (!fs::exists(best_path)) save_checkpoint(best_path, result.best_params, meta);
  write_loss_csv((fs::path(out_dir) / "loss.csv").string(), result.report);
  write_loss_json((fs::path(out_dir) / "loss.json").string(), result.report);
  write_validation_csv((fs::path(out_dir) / "validation_errors.csv").string(),
                       result.report.val_errors);

  std::cout << "best validation loss " << result.best_val << " at epoch " << result.best_epoch
            << "\n"
            << "checkpoints in " << out_dir << "\n";

  RunManifest manifest;
  manifest.command = "train";
  manifest.config_hash = fnv1a64_hex(emit_config(cfg));
  if (!common.config_path.empty()) manifest.add_input(common.config_path);
  manifest.add_input(dataset_path);
  manifest.outputs = {final_path, best_path, (fs::path(out_dir) / "loss.csv").string(),
                      (fs::path(out_dir) / "loss.json").string(),
                      (fs::path(out_dir) / "validation_errors.csv").string()};
  manifest.wall_seconds = timer.seconds();
  manifest.write(out_dir);
  return 0;
}

int cmd_validate(const CommonOpts& common, const std::string& checkpoint_path,
                 const std::string& dataset_path, std::string out_path) {
  Timer timer;
  RunConfig cfg = load_config(common);
  const std::string out_dir = resolve_output_dir(common, cfg);
  fs::create_directories(out_dir);
  if (out_path.empty()) out_path = (fs::path(out_dir) / "validation_errors.csv").string();

  const LoadedDataset loaded = load_dataset(dataset_path);
  const LoadedCheckpoint ckpt = load_checkpoint(checkpoint_path);
  const std::vector<double> errors = validate(ckpt.params, loaded.dataset);
  write_validation_csv(out_path, errors);

  double mean = 0.0, worst = 0.0;
  for (double e : errors) {
    mean += e / static_cast<double>(errors.size());
    worst = std::max(worst, e);
  }
  std::cout << "validated " << errors.size() << " samples: mean relative error " << mean
            << ", worst " << worst << "\n";

  RunManifest manifest;
  manifest.command = "validate";
  manifest.config_hash = fnv1a64_hex(emit_config(cfg));
  manifest.add_input(checkpoint_path);
  manifest.add_input(dataset_path);
  manifest.outputs = {out_path};
  manifest.wall_seconds = timer.seconds();
  manifest.write(out_dir);
  return 0;
}

int cmd_propagate(const CommonOpts& common, const std::string& backend_flag,
                  const std::string& checkpoint_path, const std::string& state_spec, int windows,
                  std::string out_path) {
  Timer timer;
  RunConfig cfg = load_config(common);
  if (!backend_flag.empty()) cfg.backend = backend_flag;
  const std::string out_dir = resolve_output_dir(common, cfg);
  fs::create_directories(out_dir);
  if (out_path.empty()) out_path = (fs::path(out_dir) / "populations.csv").string();

  const LindbladSystem system = cfg.system.build();
  const BackendBundle bundle = make_backend(cfg.backend, system, cfg.grid, checkpoint_path);
  const DensityState s0 = parse_state_spec(state_spec, system.dim());
  const PopulationSeries series = population_trace(*bundle.backend, s0, windows);
  write_populations_csv(out_path, series);

  Json meta;
  meta["kind"] = "populations";
  meta["backend"] = bundle.backend->name();
  meta["grid"] = grid_json(cfg.grid);
  meta["windows"] = windows;
  meta["state"] = state_spec;
  meta["max_imag_residue"] = series.max_imag_residue;
  if (!bundle.checkpoint_hash.empty()) meta["checkpoint_fnv64"] = bundle.checkpoint_hash;
  write_sidecar(out_path, meta);

  std::cout << "wrote " << series.times_fs.size() << " rows to " << out_path << " (backend "
            << bundle.backend->name() << ", " << windows << " windows, imag residue "
            << series.max_imag_residue << ")\n";

  RunManifest manifest;
  manifest.command = "propagate";
  manifest.config_hash = fnv1a64_hex(emit_config(cfg));
  if (!common.config_path.empty()) manifest.add_input(common.config_path);
  if (!checkpoint_path.empty()) manifest.add_input(checkpoint_path);
  manifest.outputs = {out_path, out_path + ".meta.json"};
  manifest.wall_seconds = timer.seconds();
  manifest.write(out_dir);
  return 0;
}

int cmd_tcf(const CommonOpts& common, const std::string& backend_flag,
            const std::string& checkpoint_path, const std::string& state_spec,
            const std::string& observable_spec, int order, TcfAxis axis1, TcfAxis axis2,
            bool full_scale, std::string out_path) {
  Timer timer;
  RunConfig cfg = load_config(common);
  if (!backend_flag.empty()) cfg.backend = backend_flag;
  const std::string out_dir = resolve_output_dir(common, cfg);
  fs::create_directories(out_dir);
  if (out_path.empty()) out_path = (fs::path(out_dir) / "tcf.csv").string();
  if (order != 1 && order != 2) throw ConfigError("tcf order must be 1 or 2");
  if (full_scale) {
    // Published-figure grids: R1 over [0, 50 t_max] stride 1, R2 over
    // [0, 40 t_max]^2 stride 5.
    if (order == 1) {
      axis1 = TcfAxis{50 * cfg.grid.n_steps + 1, 1};
    } else {
      axis1 = TcfAxis{8 * cfg.grid.n_steps + 1, 5};
      axis2 = axis1;
    }
  }

  const LindbladSystem system = cfg.system.build();
  const BackendBundle bundle = make_backend(cfg.backend, system, cfg.grid, checkpoint_path);
  const DensityState s0 = parse_state_spec(state_spec, system.dim());
  const HermitianOperator x = parse_observable(observable_spec, system.dim());

  TcfGrid tcf;
  if (order == 1)
    tcf = tcf_first_order(*bundle.backend, x, s0, axis1);
  else
    tcf = tcf_second_order(*bundle.backend, x, s0, axis1, axis2);
  write_tcf_csv(out_path, tcf);

  Json meta;
  meta["kind"] = "tcf";
  meta["order"] = order;
  meta["backend"] = bundle.backend->name();
  meta["grid"] = grid_json(cfg.grid);
  meta["state"] = state_spec;
  meta["observable"] = observable_spec;
  meta["n1"] = tcf.values.rows();
  meta["t1_spacing_fs"] = tcf.t1_spacing_fs;
  if (order == 2) {
    meta["n2"] = tcf.values.cols();
    meta["t2_spacing_fs"] = tcf.t2_spacing_fs;
  }
  meta["max_imag_residue"] = tcf.max_imag_residue;
  if (!bundle.checkpoint_hash.empty()) meta["checkpoint_fnv64"] = bundle.checkpoint_hash;
  write_sidecar(out_path, meta);

  std::cout << "wrote R(" << order << ") with " << tcf.values.rows() << " x "
            << tcf.values.cols() << " points to " << out_path << " in " << timer.seconds()
            << " s (backend " << bundle.backend->name() << ")\n";

  RunManifest manifest;
  manifest.command = "tcf";
  manifest.config_hash = fnv1a64_hex(emit_config(cfg));
  if (!common.config_path.empty()) manifest.add_input(common.config_path);
  if (!checkpoint_path.empty()) manifest.add_input(checkpoint_path);
  manifest.outputs = {out_path, out_path + ".meta.json"};
  manifest.wall_seconds = timer.seconds();
  manifest.write(out_dir);
  return 0;
}

int cmd_spectrum(const CommonOpts& common, const std::string& tcf_path, bool normalize,
                 std::string out_path) {
  Timer timer;
  RunConfig cfg = load_config(common);
  const std::string out_dir = resolve_output_dir(common, cfg);
  fs::create_directories(out_dir);
  if (out_path.empty()) out_path = (fs::path(out_dir) / "spectrum.csv").string();

  const auto meta = nlohmann::json::parse(read_text_file(tcf_path + ".meta.json"));
  const TcfGrid tcf = read_tcf_csv(tcf_path, meta);
  const SpectrumGrid s = spectrum(tcf, normalize);
  write_spectrum_csv(out_path, s);

  Json smeta;
  smeta["kind"] = "spectrum";
  smeta["order"] = s.order;
  smeta["normalized"] = s.normalized;
  smeta["source_tcf"] = tcf_path;
  smeta["source_backend"] = meta.value("backend", "");
  write_sidecar(out_path, smeta);

  std::cout << "wrote spectrum (" << s.intensity.rows() << " x " << s.intensity.cols()
            << ") to " << out_path << (normalize ? " (max-normalized)" : "") << "\n";

  RunManifest manifest;
  manifest.command = "spectrum";
  manifest.config_hash = fnv1a64_hex(emit_config(cfg));
  manifest.add_input(tcf_path);
  manifest.outputs = {out_path, out_path + ".meta.json"};
  manifest.wall_seconds = timer.seconds();
  manifest.write(out_dir);
  return 0;
}

int cmd_info(bool emit_default_config) {
  if (emit_default_config) {
    std::cout << emit_config(RunConfig{});
    return 0;
  }
  std::cout << "nqp " << kVersion << " - neural quantum propagator toolkit\n"
            << "units: energies in cm^-1, time in fs; 1/hbar = 2*pi*c = "
            << kAngularFreqPerWavenumber << " rad/fs per cm^-1\n";
  std::vector<std::string> warnings;
  const LindbladSystem sys = fmo7_system(&warnings);
  std::cout << "built-in system fmo7: " << sys.dim() << " sites, dephasing 35 cm^-1\n";
  for (const std::string& w : warnings) std::cout << "note: " << w << "\n";
  std::cout << "subcommands: gen-data, train, validate, propagate, tcf, spectrum, info\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"neural quantum propagator: Lindblad dynamics, surrogate training, TCFs"};
  app.require_subcommand(1);

  CommonOpts common;
  std::uint64_t seed_flag = 0;
  auto add_common = [&](CLI::App* sub, bool with_config = true) {
    if (with_config) sub->add_option("-c,--config", common.config_path, "JSON config file");
    sub->add_option("-o,--output-dir", common.output_dir,
                    "output directory (default: config value or $NQP_OUTPUT_DIR)");
    sub->add_option("--threads", common.threads, "cap worker threads");
    sub->add_option("--seed", seed_flag, "override the config seed")
        ->each([&](const std::string&) { common.seed = seed_flag; });
  };

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "sample initial states and integrate trajectories");
  std::string gen_out;
  int gen_train = 0, gen_val = 0;
  add_common(gen);
  gen->add_option("--out", gen_out, "dataset output path");
  gen->add_option("--n-train", gen_train, "training sample count");
  gen->add_option("--n-val", gen_val, "validation sample count");

  // train
  auto* tr = app.add_subcommand("train", "fit the neural propagator to a dataset");
  std::string tr_dataset, tr_out_dir;
  int tr_epochs = -1;
  bool tr_resume = false;
  add_common(tr);
  tr->add_option("--dataset", tr_dataset, "dataset container")->required();
  tr->add_option("--out-dir", tr_out_dir, "training output directory");
  tr->add_option("--epochs", tr_epochs, "override epoch count");
  tr->add_flag("--resume", tr_resume, "continue from the latest snapshot in --out-dir");

  // validate
  auto* va = app.add_subcommand("validate", "per-sample relative errors of a checkpoint");
  std::string va_ckpt, va_dataset, va_out;
  add_common(va);
  va->add_option("--checkpoint", va_ckpt, "NQP1 checkpoint")->required();
  va->add_option("--dataset", va_dataset, "dataset container")->required();
  va->add_option("--out", va_out, "errors CSV path");

  // propagate
  auto* pr = app.add_subcommand("propagate", "long-time population dynamics");
  std::string pr_backend, pr_ckpt, pr_state = "site:1", pr_out;
  int pr_windows = 50;
  add_common(pr);
  pr->add_option("--backend", pr_backend, "rk4, expm or fno");
  pr->add_option("--checkpoint", pr_ckpt, "NQP1 checkpoint (fno backend)");
  pr->add_option("--state", pr_state, "site:k, mixed or file:<json>");
  pr->add_option("--windows", pr_windows, "number of composed t_max windows");
  pr->add_option("--out", pr_out, "populations CSV path");

  // tcf
  auto* tc = app.add_subcommand("tcf", "first/second-order time-correlation functions");
  std::string tc_backend, tc_ckpt, tc_state = "site:1", tc_obs = "hopping", tc_out;
  int tc_order = 1;
  TcfAxis tc_axis1{2501, 1}, tc_axis2{101, 5};
  bool tc_full = false;
  add_common(tc);
  tc->add_option("--backend", tc_backend, "rk4, expm or fno");
  tc->add_option("--checkpoint", tc_ckpt, "NQP1 checkpoint (fno backend)");
  tc->add_option("--state", tc_state, "site:k, mixed or file:<json>");
  tc->add_option("--observable", tc_obs, "hopping, identity or file:<json>");
  tc->add_option("--order", tc_order, "1 or 2");
  tc->add_option("--t1-points", tc_axis1.n_points, "points along t1");
  tc->add_option("--t1-stride", tc_axis1.stride, "grid strides between t1 points");
  tc->add_option("--t2-points", tc_axis2.n_points, "points along t2 (order 2)");
  tc->add_option("--t2-stride", tc_axis2.stride, "grid strides between t2 points (order 2)");
  tc->add_flag("--full-scale", tc_full, "published-figure grids instead of the desk defaults");
  tc->add_option("--out", tc_out, "TCF CSV path");

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "imaginary part of a TCF's Fourier transform");
  std::string sp_tcf, sp_out;
  bool sp_norm = false;
  add_common(sp);
  sp->add_option("--tcf", sp_tcf, "TCF CSV produced by the tcf subcommand")->required();
  sp->add_flag("--normalize", sp_norm, "scale peak intensity to one");
  sp->add_option("--out", sp_out, "spectrum CSV path");

  // info
  auto* in = app.add_subcommand("info", "version, units and built-in systems");
  bool in_emit = false;
  in->add_flag("--emit-config", in_emit, "print the default config JSON and exit");

  try {
    app.parse(argc, argv);
    // Desk defaults for the second order differ from the first.
    if (tc->parsed() && tc_order == 2 && !tc->count("--t1-points"))
      tc_axis1 = TcfAxis{101, 5};

    apply_threads(common.threads);
    if (gen->parsed()) return cmd_gen_data(common, gen_out, gen_train, gen_val);
    if (tr->parsed()) return cmd_train(common, tr_dataset, tr_out_dir, tr_epochs, tr_resume);
    if (va->parsed()) return cmd_validate(common, va_ckpt, va_dataset, va_out);
    if (pr->parsed())
      return cmd_propagate(common, pr_backend, pr_ckpt, pr_state, pr_windows, pr_out);
    if (tc->parsed())
      return cmd_tcf(common, tc_backend, tc_ckpt, tc_state, tc_obs, tc_order, tc_axis1, tc_axis2,
                     tc_full, tc_out);
    if (sp->parsed()) return cmd_spectrum(common, sp_tcf, sp_norm, sp_out);
    if (in->parsed()) return cmd_info(in_emit);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "E_USAGE: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.code() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "E_INTERNAL: " << e.what() << "\n";
    return 3;
  }
}
