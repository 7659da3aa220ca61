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

#include "lqg/background.hpp"

#include <cmath>

namespace lqg {

double spherical_density(Complex z) {
  const double r2 = std::norm(z);
  return 1.0 / (M_PI * (1.0 + r2) * (1.0 + r2));
}

BackgroundMeasure BackgroundMeasure::sphere() {
  return BackgroundMeasure(BackgroundKind::kSphere);
}

BackgroundMeasure BackgroundMeasure::unit_circle() {
  return BackgroundMeasure(BackgroundKind::kUnitCircle);
}

BackgroundMeasure BackgroundMeasure::custom(
    std::function<double(Complex)> density, double support_radius,
    int quadrature_nodes) {
  if (!(support_radius > 0.0) || quadrature_nodes < 16) {
    throw ConfigError("custom background measure needs a positive support "
                      "radius and >= 16 quadrature nodes per axis");
  }
  BackgroundMeasure m(BackgroundKind::kCustom);
  m.density_ = std::move(density);
  m.support_radius_ = support_radius;
  m.quad_nodes_ = quadrature_nodes;
  return m;
}

double BackgroundMeasure::density(Complex z) const {
  switch (kind_) {
    case BackgroundKind::kSphere:
      return spherical_density(z);
    case BackgroundKind::kCustom:
      return density_(z);
    case BackgroundKind::kUnitCircle:
      throw GeometryError("unit-circle measure has no planar density");
  }
  return 0.0;
}

namespace {

// Midpoint quadrature of f against a planar density over a centered square.
double square_quadrature(const std::function<double(Complex)>& density,
                         double half_width, int nodes,
                         const std::function<double(Complex)>& f) {
  const double h = 2.0 * half_width / nodes;
  double num = 0.0, mass = 0.0;
  for (int iy = 0; iy < nodes; ++iy) {
    for (int ix = 0; ix < nodes; ++ix) {
      const Complex z(-half_width + (ix + 0.5) * h,
                      -half_width + (iy + 0.5) * h);
      const double p = density(z) * h * h;
      mass += p;
      num += p * f(z);
    }
  }
  return num / mass;
}

}  // namespace

double BackgroundMeasure::log_potential(Complex z) const {
  switch (kind_) {
    case BackgroundKind::kUnitCircle:
      return -std::log(std::max(std::abs(z), 1.0));
    case BackgroundKind::kSphere:
      return -0.5 * std::log1p(std::norm(z));
    case BackgroundKind::kCustom:
      return square_quadrature(density_, support_radius_, quad_nodes_,
                               [z](Complex w) {
                                 const double d = std::abs(z - w);
                                 return d > 0.0 ? -std::log(d) : 0.0;
                               });
  }
  return 0.0;
}

double BackgroundMeasure::theta() const {
  switch (kind_) {
    case BackgroundKind::kUnitCircle:
      return 0.0;
    case BackgroundKind::kSphere:
      return -0.5;
    case BackgroundKind::kCustom: {
      if (!theta_ready_) {
        // theta = integral of m(z) dp(z)
        theta_cache_ = square_quadrature(
            density_, support_radius_, quad_nodes_,
            [this](Complex z) { return log_potential(z); });
        theta_ready_ = true;
      }
      return theta_cache_;
    }
  }
  return 0.0;
}

double BackgroundMeasure::field_average(const Field& field) const {
  if (kind_ == BackgroundKind::kUnitCircle) {
    return circle_average(field, Complex(0.0, 0.0), 1.0);
  }
  const auto* pg = field.planar();
  if (pg == nullptr) {
    throw GeometryError("field_average over a density expects a planar field");
  }
  double num = 0.0, mass = 0.0;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    if (!pg->interior(i)) continue;
    const double p = density(pg->center(i)) * pg->cell_area();
    mass += p;
    num += p * field.values[i];
  }
  if (!(mass > 0.0)) {
    throw ConfigError("background measure has no mass on the grid");
  }
  return num / mass;
}

double green_function(const BackgroundMeasure& rho, Complex x, Complex y) {
  if (x == y) throw ParameterError("green_function is singular at x == y");
  return -std::log(std::abs(x - y)) - rho.log_potential(x) -
         rho.log_potential(y) + rho.theta();
}

double green_disk(double radius, Complex x, Complex y) {
  return -std::log(std::abs(x - y)) +
         std::log(std::abs(radius * radius - x * std::conj(y)) / radius);
}

}  // namespace lqg
