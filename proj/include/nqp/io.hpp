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

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "nqp/common.hpp"

namespace nqp {

// All container files are little-endian float64; this code asserts the host
// matches rather than byte-swapping.
static_assert(std::endian::native == std::endian::little,
              "container formats assume a little-endian host");

inline void write_bytes(std::ostream& os, const void* data, std::size_t n) {
  os.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  if (!os) throw IoError("write failed");
}

inline void read_bytes(std::istream& is, void* data, std::size_t n) {
  is.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(is.gcount()) != n) throw IoError("unexpected end of file");
}

inline void write_u64(std::ostream& os, std::uint64_t v) { write_bytes(os, &v, 8); }

inline std::uint64_t read_u64(std::istream& is) {
  std::uint64_t v = 0;
  read_bytes(is, &v, 8);
  return v;
}

/// Append a complex vector as interleaved (re, im) float64 pairs.
inline void write_complex_interleaved(std::ostream& os, const VectorXcd& v) {
  std::vector<double> buf(static_cast<std::size_t>(v.size()) * 2);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    buf[static_cast<std::size_t>(2 * i)] = v(i).real();
    buf[static_cast<std::size_t>(2 * i) + 1] = v(i).imag();
  }
  write_bytes(os, buf.data(), buf.size() * sizeof(double));
}

inline VectorXcd read_complex_interleaved(std::istream& is, Eigen::Index n) {
  std::vector<double> buf(static_cast<std::size_t>(n) * 2);
  read_bytes(is, buf.data(), buf.size() * sizeof(double));
  VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v(i) = Complex(buf[static_cast<std::size_t>(2 * i)], buf[static_cast<std::size_t>(2 * i) + 1]);
  return v;
}

/// float64 -> shortest text that round-trips: 17 significant digits.
inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

inline std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) throw IoError("cannot open for writing: " + path);
  return os;
}

inline std::ifstream open_in(const std::string& path, bool binary = false) {
  std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
  if (!is) throw IoError("cannot open for reading: " + path);
  return is;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream is = open_in(path, true);
  std::string s((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return s;
}

/// Write then atomically rename into place.
inline void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os = open_out(tmp, true);
    write_bytes(os, content.data(), content.size());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace nqp
