// Copyright 2026 The lqgsim Authors
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

#ifndef LQG_RNG_HPP
#define LQG_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>

namespace lqg {

/// FNV-1a hash of a byte string; used for stream tags and config fingerprints.
std::uint64_t fnv1a(std::string_view bytes) noexcept;

/// splitmix64 mixing step.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Seed-splitting rule shared by every sampler in the project:
///   stream(root, tag, replica) = splitmix64(splitmix64(root ^ fnv1a(tag)) + replica)
/// Distinct tags and replica indices give decorrelated engine seeds, so
/// replicas can be drawn in any order (or in parallel) with identical results.
std::uint64_t derive_stream_seed(std::uint64_t root, std::string_view tag,
                                 std::uint64_t replica = 0) noexcept;

/// Deterministic random stream: mt19937_64 plus a hand-rolled polar-method
/// normal generator. std::normal_distribution is avoided on purpose, its
/// output is not pinned by the standard and would break byte-for-byte
/// reproducibility of serialized ensembles across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1).
  double uniform() {
    // 53-bit mantissa draw
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal (Marsaglia polar, cached pair).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Index in [0, n) from a single draw.
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace lqg

#endif  // LQG_RNG_HPP
