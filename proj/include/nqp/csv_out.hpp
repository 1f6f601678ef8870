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

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nqp/io.hpp"
#include "nqp/spectrum.hpp"
#include "nqp/tcf.hpp"
#include "nqp/train.hpp"

namespace nqp {

// All numeric CSV output uses 17 significant digits so files round-trip
// float64 exactly.

inline void write_populations_csv(const std::string& path, const PopulationSeries& p) {
  std::ofstream os = open_out(path);
  os << "t_fs";
  for (std::size_t s = 1; s <= p.site_populations.size(); ++s) os << ",p_" << s;
  os << "\n";
  for (std::size_t k = 0; k < p.times_fs.size(); ++k) {
    os << format_g17(p.times_fs[k]);
    for (const auto& site : p.site_populations) os << "," << format_g17(site[k]);
    os << "\n";
  }
}

inline void write_tcf_csv(const std::string& path, const TcfGrid& tcf) {
  std::ofstream os = open_out(path);
  if (tcf.order == 1) {
    os << "t1_fs,re,im\n";
    for (Eigen::Index i = 0; i < tcf.values.rows(); ++i)
      os << format_g17(tcf.t1_fs[static_cast<std::size_t>(i)]) << ","
         << format_g17(tcf.values(i, 0).real()) << "," << format_g17(tcf.values(i, 0).imag())
         << "\n";
  } else {
    os << "t1_fs,t2_fs,re,im\n";
    for (Eigen::Index i = 0; i < tcf.values.rows(); ++i)
      for (Eigen::Index j = 0; j < tcf.values.cols(); ++j)
        os << format_g17(tcf.t1_fs[static_cast<std::size_t>(i)]) << ","
           << format_g17(tcf.t2_fs[static_cast<std::size_t>(j)]) << ","
           << format_g17(tcf.values(i, j).real()) << "," << format_g17(tcf.values(i, j).imag())
           << "\n";
  }
}

/// Rebuild a TcfGrid from its CSV plus the metadata sidecar.
inline TcfGrid read_tcf_csv(const std::string& csv_path, const nlohmann::json& meta) {
  TcfGrid tcf;
  tcf.order = meta.at("order").get<int>();
  const auto n1 = meta.at("n1").get<Eigen::Index>();
  const auto n2 = tcf.order == 2 ? meta.at("n2").get<Eigen::Index>() : 1;
  tcf.t1_spacing_fs = meta.at("t1_spacing_fs").get<double>();
  tcf.t2_spacing_fs = meta.value("t2_spacing_fs", 0.0);
  tcf.values.resize(n1, n2);

  std::ifstream is = open_in(csv_path);
  std::string line;
  std::getline(is, line);  // header
  const int time_cols = tcf.order == 1 ? 1 : 2;
  Eigen::Index row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<double> fields;
    while (std::getline(ss, field, ',')) fields.push_back(std::stod(field));
    if (static_cast<int>(fields.size()) != time_cols + 2)
      throw IoError("tcf csv: unexpected column count in " + csv_path);
    const Eigen::Index i = row / n2;
    const Eigen::Index j = row % n2;
    if (i >= n1) throw IoError("tcf csv: more rows than the sidecar declares");
    tcf.values(i, j) = Complex(fields[static_cast<std::size_t>(time_cols)],
                               fields[static_cast<std::size_t>(time_cols) + 1]);
    if (j == 0) tcf.t1_fs.push_back(fields[0]);
    if (i == 0 && tcf.order == 2) tcf.t2_fs.push_back(fields[1]);
    ++row;
  }
  if (row != n1 * n2) throw IoError("tcf csv: fewer rows than the sidecar declares");
  return tcf;
}

inline void write_spectrum_csv(const std::string& path, const SpectrumGrid& s) {
  std::ofstream os = open_out(path);
  if (s.order == 1) {
    os << "wavenumber_cm1,intensity\n";
    for (Eigen::Index k = 0; k < s.freq1_cm1.size(); ++k)
      os << format_g17(s.freq1_cm1(k)) << "," << format_g17(s.intensity(k, 0)) << "\n";
  } else {
    os << "w1_cm1,w2_cm1,intensity\n";
    for (Eigen::Index i = 0; i < s.freq1_cm1.size(); ++i)
      for (Eigen::Index j = 0; j < s.freq2_cm1.size(); ++j)
        os << format_g17(s.freq1_cm1(i)) << "," << format_g17(s.freq2_cm1(j)) << ","
           << format_g17(s.intensity(i, j)) << "\n";
  }
}

inline void write_loss_csv(const std::string& path, const LossReport& report) {
  std::ofstream os = open_out(path);
  os << "epoch,l_data,l_phys,seconds\n";
  for (const EpochStat& e : report.epochs)
    os << e.epoch << "," << format_g17(e.l_data) << "," << format_g17(e.l_phys) << ","
       << format_g17(e.seconds) << "\n";
}

inline void write_loss_json(const std::string& path, const LossReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json epochs = nlohmann::ordered_json::array();
  for (const EpochStat& e : report.epochs)
    epochs.push_back({{"epoch", e.epoch},
                      {"l_data", e.l_data},
                      {"l_phys", e.l_phys},
                      {"seconds", e.seconds}});
  j["epochs"] = epochs;
  nlohmann::ordered_json vh = nlohmann::ordered_json::array();
  for (const auto& [epoch, loss] : report.val_history)
    vh.push_back({{"epoch", epoch}, {"val_loss", loss}});
  j["val_history"] = vh;
  j["val_errors"] = report.val_errors;
  std::ofstream os = open_out(path);
  os << j.dump(2) << "\n";
}

inline void write_validation_csv(const std::string& path, const std::vector<double>& errors) {
  std::ofstream os = open_out(path);
  os << "sample_index,relative_error\n";
  for (std::size_t i = 0; i < errors.size(); ++i)
    os << i << "," << format_g17(errors[i]) << "\n";
}

}  // namespace nqp
