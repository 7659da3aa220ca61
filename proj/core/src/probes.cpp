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

#include "lqg/probes.hpp"

#include <cmath>
#include <cstdio>

#include "lqg/rng.hpp"

namespace lqg {

bool Probe::contains(Complex z, double clip_radius) const {
  switch (kind) {
    case Kind::kWholeDomain:
      return true;
    case Kind::kDisk:
      return std::abs(z - center) < r1;
    case Kind::kAnnulus: {
      const double r = std::abs(z);
      return r > r0 && r < r1;
    }
    case Kind::kHalfPlane:
      return z.real() > offset && std::abs(z) <= clip_radius;
  }
  return false;
}

ProbeSet::ProbeSet(std::vector<Probe> probes, double clip_radius)
    : probes_(std::move(probes)), clip_radius_(clip_radius) {
  if (probes_.empty()) throw ConfigError("probe set is empty");
}

ProbeSet ProbeSet::standard(double clip_radius) {
  std::vector<Probe> p(4);
  p[0].kind = Probe::Kind::kDisk;
  p[0].name = "unit_disk";
  p[0].r1 = 1.0;
  p[1].kind = Probe::Kind::kAnnulus;
  p[1].name = "annulus_1_2";
  p[1].r0 = 1.0;
  p[1].r1 = 2.0;
  p[2].kind = Probe::Kind::kHalfPlane;
  p[2].name = "halfplane_re_gt_half";
  p[2].offset = 0.5;
  p[3].kind = Probe::Kind::kDisk;
  p[3].name = "disk_at_one";
  p[3].center = Complex(1.0, 0.0);
  p[3].r1 = 0.25;
  return ProbeSet(std::move(p), clip_radius);
}

std::vector<std::string> ProbeSet::names() const {
  std::vector<std::string> out;
  out.reserve(probes_.size());
  for (const auto& p : probes_) out.push_back(p.name);
  return out;
}

std::vector<double> ProbeSet::observe(const Measure& measure) const {
  const Measure bar = measure.total == 1.0 ? measure : normalize(measure);
  std::vector<double> obs(probes_.size(), 0.0);
  std::vector<int> cells(probes_.size(), 0);

  auto accumulate = [&](Complex z, double mass) {
    for (std::size_t k = 0; k < probes_.size(); ++k) {
      if (probes_[k].contains(z, clip_radius_)) {
        obs[k] += mass;
        ++cells[k];
      }
    }
  };

  if (const auto* pg = bar.planar()) {
    for (std::size_t i = 0; i < bar.cell_mass.size(); ++i) {
      if (pg->interior(i)) accumulate(pg->center(i), bar.cell_mass[i]);
    }
  } else {
    const auto& cg = std::get<CylinderGrid>(bar.geometry);
    for (int it = 0; it < cg.n_t(); ++it) {
      for (int ith = 0; ith < cg.n_theta(); ++ith) {
        accumulate(cg.plane_point(it, ith), bar.cell_mass[cg.index(it, ith)]);
      }
    }
  }
  for (std::size_t k = 0; k < probes_.size(); ++k) {
    if (cells[k] == 0) {
      throw ConfigError("probe '" + probes_[k].name + "' covers no grid cell");
    }
  }
  return obs;
}

std::uint64_t ProbeSet::fingerprint() const {
  std::string blob;
  char buf[160];
  for (const auto& p : probes_) {
    std::snprintf(buf, sizeof buf, "%d|%s|%.17g|%.17g|%.17g|%.17g|%.17g;",
                  static_cast<int>(p.kind), p.name.c_str(), p.center.real(),
                  p.center.imag(), p.r0, p.r1, p.offset);
    blob += buf;
  }
  std::snprintf(buf, sizeof buf, "clip=%.17g", clip_radius_);
  blob += buf;
  return fnv1a(blob);
}

}  // namespace lqg
