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

#ifndef LQG_PROBES_HPP
#define LQG_PROBES_HPP

#include <string>
#include <vector>

#include "lqg/chaos.hpp"

namespace lqg {

/// Plane region evaluated against normalized measures. Cylinder measures are
/// probed through z = exp(-(t + i theta)), so the same probe set produces
/// comparable observables across charts.
struct Probe {
  enum class Kind : std::uint8_t {
    kWholeDomain,
    kDisk,       // |z - center| < radius
    kAnnulus,    // r0 < |z| < r1
    kHalfPlane,  // Re(z) > offset, clipped to |z| <= clip_radius
  };
  Kind kind = Kind::kWholeDomain;
  std::string name;
  Complex center{0.0, 0.0};
  double r0 = 0.0;
  double r1 = 0.0;
  double offset = 0.0;

  bool contains(Complex z, double clip_radius) const;
};

class ProbeSet {
 public:
  ProbeSet() = default;
  ProbeSet(std::vector<Probe> probes, double clip_radius);

  /// Mass of the unit disk, the [1,2] annulus, the half-plane Re z > 1/2 and
  /// the disk |z - 1| < 1/4: a set separating the neighbourhoods of marked
  /// points at 0, 1 and infinity.
  static ProbeSet standard(double clip_radius);

  std::size_t size() const noexcept { return probes_.size(); }
  const std::vector<Probe>& probes() const noexcept { return probes_; }
  double clip_radius() const noexcept { return clip_radius_; }
  std::vector<std::string> names() const;

  /// (normalized mass of probe_1, ..., probe_m). Throws ConfigError if some
  /// probe covers no grid cell.
  std::vector<double> observe(const Measure& measure) const;

  /// Stable content hash of the probe definitions (compare refuses
  /// mismatched probe sets).
  std::uint64_t fingerprint() const;

 private:
  std::vector<Probe> probes_;
  double clip_radius_ = 0.0;
};

}  // namespace lqg

#endif  // LQG_PROBES_HPP
