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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nqp {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Errors. Every failure carries a stable machine-parsable code so the CLI can
// print "E_XXX: message" on a single line.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error("E_DOMAIN", what) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& what) : Error("E_DIMENSION", what) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& what) : Error("E_NUMERIC", what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error("E_IO", what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error("E_CONFIG", what) {}
};

// ---------------------------------------------------------------------------
// Unit system: energies in cm^-1, time in fs. A wavenumber E corresponds to
// the angular frequency 2*pi*c*E, so 1/hbar == 2*pi*c in these units.
// ---------------------------------------------------------------------------

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
// CODATA speed of light, converted to cm/fs.
inline constexpr double kSpeedOfLightCmFs = 2.99792458e-5;
// rad/fs per cm^-1.
inline constexpr double kAngularFreqPerWavenumber = kTwoPi * kSpeedOfLightCmFs;
// hbar in cm^-1 * fs, approx 5308.837.
inline constexpr double kHbarCmFs = 1.0 / kAngularFreqPerWavenumber;

struct PhysicalConstants {
  double hbar_cm_fs = kHbarCmFs;
};

// ---------------------------------------------------------------------------
// Deterministic randomness. All sampling goes through Rng, which draws
// normals via Box-Muller on top of mt19937_64 so that streams are
// reproducible bit-for-bit independent of the standard library's
// distribution internals. Independent streams are derived by mixing a master
// seed with a stream id.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ splitmix64(stream ^ 0xA5A5A5A5DEADBEEFULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; pairs are cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    // Avoid log(0).
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

  // Uniform integer in [0, n). Modulo bias is ~2^-53 for the sizes used here.
  std::size_t bounded(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// In-place Fisher-Yates with a fixed draw sequence.
template <typename T>
void deterministic_shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.bounded(i)]);
  }
}

// ---------------------------------------------------------------------------
// FNV-1a, used for config/checkpoint fingerprints in run manifests.
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a64(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::string fnv1a64_hex(const std::string& s) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(s.data(), s.size())));
  return std::string(buf);
}

}  // namespace nqp
