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

#include "lqg/grids.hpp"

#include <algorithm>
#include <cmath>

namespace lqg {

PlanarGrid::PlanarGrid(int resolution, double domain_radius)
    : resolution_(resolution),
      radius_(domain_radius),
      cell_(2.0 * domain_radius / resolution) {
  if (resolution < 16) {
    throw ConfigError("planar grid resolution must be >= 16");
  }
  if (!(domain_radius > 0.0)) {
    throw ConfigError("planar grid radius must be positive");
  }
  mask_.resize(num_cells());
  for (int iy = 0; iy < resolution_; ++iy) {
    for (int ix = 0; ix < resolution_; ++ix) {
      const bool in = interior(ix, iy);
      mask_[index(ix, iy)] = in ? 1 : 0;
      if (in) ++num_interior_;
    }
  }
}

CylinderGrid::CylinderGrid(double t_min, double t_max, int n_t, int n_theta)
    : t_min_(t_min), t_max_(t_max), n_t_(n_t), n_theta_(n_theta) {
  if (!(t_min < t_max)) throw ConfigError("cylinder grid needs t_min < t_max");
  if (n_t < 2) throw ConfigError("cylinder grid needs n_t >= 2");
  if (n_theta < 8) throw ConfigError("cylinder grid needs n_theta >= 8");
}

void Field::add_constant(double c) {
  if (const auto* pg = planar()) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (pg->interior(i)) values[i] += c;
    }
  } else {
    for (double& v : values) v += c;
  }
}

double interpolate(const Field& field, Complex z) {
  const auto* pg = field.planar();
  if (pg == nullptr) {
    throw GeometryError("bilinear interpolation expects a planar field");
  }
  const double cell = pg->cell_size();
  // lattice coordinates of cell centers
  const double fx = (z.real() + pg->domain_radius()) / cell - 0.5;
  const double fy = (z.imag() + pg->domain_radius()) / cell - 0.5;
  const int ix = static_cast<int>(std::floor(fx));
  const int iy = static_cast<int>(std::floor(fy));
  if (ix < 0 || iy < 0 || ix + 1 >= pg->resolution() ||
      iy + 1 >= pg->resolution()) {
    throw GeometryError("interpolation point outside the grid");
  }
  const double ax = fx - ix;
  const double ay = fy - iy;
  const auto v = [&](int i, int j) { return field.values[pg->index(i, j)]; };
  return (1 - ax) * (1 - ay) * v(ix, iy) + ax * (1 - ay) * v(ix + 1, iy) +
         (1 - ax) * ay * v(ix, iy + 1) + ax * ay * v(ix + 1, iy + 1);
}

double circle_average(const Field& field, Complex center, double radius) {
  const auto* pg = field.planar();
  if (pg == nullptr) throw GeometryError("circle_average expects a planar field");
  if (radius < 2.0 * pg->cell_size()) {
    throw GeometryError("circle radius below two cell sizes");
  }
  if (std::abs(center) + radius >= pg->domain_radius()) {
    throw GeometryError("circle exits the domain");
  }
  const int n = std::max<int>(
      64, static_cast<int>(std::ceil(2.0 * M_PI * radius / pg->cell_size())));
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double phi = 2.0 * M_PI * k / n;
    sum += interpolate(field,
                       center + radius * Complex(std::cos(phi), std::sin(phi)));
  }
  return sum / n;
}

RadialAngularSplit radial_angular_split(const Field& field) {
  const auto* cg = field.cylinder();
  if (cg == nullptr) {
    throw GeometryError("radial_angular_split expects a cylinder field");
  }
  RadialAngularSplit out;
  out.t.resize(cg->n_t());
  out.radial.resize(cg->n_t());
  out.angular = field;
  for (int it = 0; it < cg->n_t(); ++it) {
    double mean = 0.0;
    for (int ith = 0; ith < cg->n_theta(); ++ith) {
      mean += field.values[cg->index(it, ith)];
    }
    mean /= cg->n_theta();
    out.t[it] = cg->t_center(it);
    out.radial[it] = mean;
    for (int ith = 0; ith < cg->n_theta(); ++ith) {
      out.angular.values[cg->index(it, ith)] -= mean;
    }
  }
  return out;
}

}  // namespace lqg
