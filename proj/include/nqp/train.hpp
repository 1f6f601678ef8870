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

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "nqp/adam.hpp"
#include "nqp/checkpoint.hpp"
#include "nqp/common.hpp"
#include "nqp/dataset.hpp"
#include "nqp/fno_grad.hpp"
#include "nqp/loss.hpp"
#include "nqp/sampling.hpp"

namespace nqp {

struct TrainConfig {
  int epochs = 2000;
  int batch_size = 20;
  double lr = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double physics_weight = 1.0;
  int onthefly_samples = 400;
  std::uint64_t seed = 0;
  int checkpoint_interval = 100;  // epochs between resume snapshots; 0 = off
  int val_interval = 1;           // epochs between validation sweeps

  void validate() const {
    if (epochs < 0) throw DomainError("TrainConfig: epochs must be >= 0");
    if (batch_size < 1) throw DomainError("TrainConfig: batch_size must be >= 1");
    if (lr <= 0.0) throw DomainError("TrainConfig: lr must be > 0");
    if (physics_weight < 0.0) throw DomainError("TrainConfig: physics_weight must be >= 0");
    if (onthefly_samples < 0) throw DomainError("TrainConfig: onthefly_samples must be >= 0");
  }
};

struct EpochStat {
  int epoch = 0;
  double l_data = 0.0;
  double l_phys = 0.0;
  double seconds = 0.0;
};

struct LossReport {
  std::vector<EpochStat> epochs;
  std::vector<std::pair<int, double>> val_history;  // (epoch, mean val loss)
  std::vector<double> val_errors;                   // per-sample, best model
};

/// Fresh Hermitian inputs for the physics loss, re-generated every epoch on a
/// stream derived from (seed, epoch). Unit Frobenius norm, deliberately not
/// density-projected.
inline std::vector<VectorXcd> onthefly_sample(int n, Eigen::Index dim, std::uint64_t seed,
                                              int epoch) {
  Rng rng(derive_seed(seed, 0x4F544631ULL ^ static_cast<std::uint64_t>(epoch)));
  std::vector<VectorXcd> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(sample_unit_hermitian(dim, rng));
  return out;
}

/// Per-sample relative data loss over the validation split; forward only.
inline std::vector<double> validate(const FnoParams& params, const Dataset& dataset) {
  const std::size_t n = dataset.validation.size();
  std::vector<double> errors(n, 0.0);
  const DftPlan plan(dataset.grid.n_points());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    const Sample& s = dataset.validation[i];
    const GridFn y = fno_forward_matrix(params, s.initial.vec, dataset.grid, plan);
    errors[i] = data_loss_on_output(y, s.trajectory.as_matrix());
  }
  return errors;
}

struct TrainResult {
  FnoParams best_params;
  FnoParams final_params;
  LossReport report;
  double best_val = std::numeric_limits<double>::infinity();
  int best_epoch = 0;
};

struct ResumeState {
  FnoParams params;
  AdamState adam;
  int epoch = 0;
  double best_val = std::numeric_limits<double>::infinity();
  int best_epoch = 0;
  FnoParams best_params;
};

namespace detail {

inline void save_resume(const std::string& dir, const FnoParams& params, const AdamState& adam,
                        int epoch, double best_val, int best_epoch) {
  namespace fs = std::filesystem;
  nlohmann::ordered_json meta;
  meta["epoch"] = epoch;
  meta["adam_step"] = adam.step;
  meta["best_val"] = best_val;
  meta["best_epoch"] = best_epoch;
  save_checkpoint((fs::path(dir) / "latest.nqp1").string(), params, meta);
  save_checkpoint((fs::path(dir) / "latest.adam_m.nqp1").string(), adam.m, meta);
  save_checkpoint((fs::path(dir) / "latest.adam_v.nqp1").string(), adam.v, meta);
}

inline ResumeState load_resume(const std::string& dir) {
  namespace fs = std::filesystem;
  ResumeState r;
  LoadedCheckpoint latest = load_checkpoint((fs::path(dir) / "latest.nqp1").string());
  r.params = std::move(latest.params);
  r.adam.m = load_checkpoint((fs::path(dir) / "latest.adam_m.nqp1").string()).params;
  r.adam.v = load_checkpoint((fs::path(dir) / "latest.adam_v.nqp1").string()).params;
  r.adam.step = latest.meta.at("adam_step").get<long long>();
  r.epoch = latest.meta.at("epoch").get<int>();
  r.best_val = latest.meta.at("best_val").get<double>();
  r.best_epoch = latest.meta.value("best_epoch", 0);
  const std::string best_path = (fs::path(dir) / "best.nqp1").string();
  r.best_params =
      fs::exists(best_path) ? load_checkpoint(best_path).params : r.params;
  return r;
}

}  // namespace detail

using EpochCallback =
    std::function<void(int epoch, double l_data, double l_phys, double val_loss)>;

/// Minimize mean data loss over the training split plus the weighted mean
/// physics loss over on-the-fly samples. Per step: one shuffled data batch
/// and its share of the epoch's physics pool; gradients accumulate in fixed
/// sample order, so runs are deterministic end to end under a fixed seed.
inline TrainResult train(const FnoConfig& fno_config, const TrainConfig& cfg,
                         const Dataset& dataset, const Liouvillian& liouvillian,
                         const std::string& out_dir = "", const ResumeState* resume = nullptr,
                         const EpochCallback& on_epoch = nullptr) {
  cfg.validate();
  fno_config.validate();
  if (dataset.grid.n_points() != fno_config.grid_points)
    throw DimensionError("train: dataset grid does not match model grid");

  const Eigen::Index dim = static_cast<Eigen::Index>(std::lround(
      std::sqrt(static_cast<double>(fno_config.state_dim))));
  const DftPlan plan(fno_config.grid_points);
  const TimeGrid grid = dataset.grid;

  TrainResult result;
  FnoParams params = resume ? resume->params : init_params(fno_config, cfg.seed);
  AdamState adam = resume ? resume->adam : AdamState::init(params);
  const AdamConfig adam_cfg{cfg.lr, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps};
  int start_epoch = resume ? resume->epoch : 0;
  result.best_val = resume ? resume->best_val : std::numeric_limits<double>::infinity();
  result.best_epoch = resume ? resume->best_epoch : 0;
  result.best_params = resume ? resume->best_params : params;

  const std::size_t n_train = dataset.train.size();
  std::vector<std::size_t> order(n_train);

  for (int epoch = start_epoch + 1; epoch <= cfg.epochs; ++epoch) {
    const auto tic = std::chrono::steady_clock::now();
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng(derive_seed(cfg.seed, 0x53485546ULL ^ static_cast<std::uint64_t>(epoch)));
    deterministic_shuffle(order, shuffle_rng);
    const std::vector<VectorXcd> phys_pool =
        onthefly_sample(cfg.onthefly_samples, dim, cfg.seed, epoch);

    const std::size_t n_steps =
        (n_train + static_cast<std::size_t>(cfg.batch_size) - 1) /
        static_cast<std::size_t>(cfg.batch_size);
    double epoch_data = 0.0;
    double epoch_phys = 0.0;
    std::size_t phys_cursor = 0;

    for (std::size_t step = 0; step < n_steps; ++step) {
      const std::size_t b0 = step * static_cast<std::size_t>(cfg.batch_size);
      const std::size_t b1 = std::min(n_train, b0 + static_cast<std::size_t>(cfg.batch_size));
      // Even share of the physics pool, remainder to the early steps.
      const std::size_t p_quota = phys_pool.size() / n_steps +
                                  (step < phys_pool.size() % n_steps ? 1u : 0u);

      FnoGrads acc = zeros_like(params);
      FnoGrads g = zeros_like(params);
      for (std::size_t b = b0; b < b1; ++b) {
        const Sample& s = dataset.train[order[b]];
        const double loss = data_loss_gradient(params, s.initial, s.trajectory, plan, g);
        if (!std::isfinite(loss))
          throw NumericError("training diverged (data loss) at epoch " + std::to_string(epoch));
        epoch_data += loss;
        axpy_params(acc, g, 1.0 / static_cast<double>(b1 - b0));
      }
      for (std::size_t p = 0; p < p_quota; ++p, ++phys_cursor) {
        const double loss =
            physics_loss_gradient(params, phys_pool[phys_cursor], liouvillian, grid, plan, g);
        if (!std::isfinite(loss))
          throw NumericError("training diverged (physics loss) at epoch " +
                             std::to_string(epoch));
        epoch_phys += loss;
        axpy_params(acc, g, cfg.physics_weight / static_cast<double>(p_quota));
      }
      adam_step(params, acc, adam, adam_cfg);
    }

    EpochStat stat;
    stat.epoch = epoch;
    stat.l_data = n_train > 0 ? epoch_data / static_cast<double>(n_train) : 0.0;
    stat.l_phys = phys_pool.empty() ? 0.0 : epoch_phys / static_cast<double>(phys_pool.size());

    double val_mean = std::numeric_limits<double>::quiet_NaN();
    const bool do_val = cfg.val_interval > 0 &&
                        (epoch % cfg.val_interval == 0 || epoch == cfg.epochs) &&
                        !dataset.validation.empty();
    if (do_val) {
      const std::vector<double> errs = validate(params, dataset);
      val_mean = std::accumulate(errs.begin(), errs.end(), 0.0) /
                 static_cast<double>(errs.size());
      result.report.val_history.emplace_back(epoch, val_mean);
      if (val_mean < result.best_val) {
        result.best_val = val_mean;
        result.best_epoch = epoch;
        result.best_params = params;
        if (!out_dir.empty()) {
          nlohmann::ordered_json meta;
          meta["epoch"] = epoch;
          meta["val_loss"] = val_mean;
          save_checkpoint((std::filesystem::path(out_dir) / "best.nqp1").string(), params, meta);
        }
      }
    }

    stat.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();
    result.report.epochs.push_back(stat);
    if (!out_dir.empty() && cfg.checkpoint_interval > 0 &&
        (epoch % cfg.checkpoint_interval == 0 || epoch == cfg.epochs))
      detail::save_resume(out_dir, params, adam, epoch, result.best_val, result.best_epoch);
    if (on_epoch) on_epoch(epoch, stat.l_data, stat.l_phys, val_mean);
  }

  result.final_params = std::move(params);
  if (!std::isfinite(result.best_val)) result.best_params = result.final_params;
  if (!dataset.validation.empty())
    result.report.val_errors = validate(result.best_params, dataset);
  return result;
}

}  // namespace nqp
