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

#include "lqg/gff_cylinder.hpp"

#include <algorithm>
#include <cmath>

#include "lqg/rng.hpp"

namespace lqg {

int angular_mode_cutoff(const CylinderGrid& grid) {
  return grid.n_theta() / 2 - 1;
}

namespace {

// Mode coefficient paths for all k in [1, kmax], both cos and sin
// coefficients, as a (2*kmax) x n_t array. `dirichlet` pins them to zero at
// t_min. Exact Gauss-Markov recursion: the one-step conditional variance of
// an OU process does not depend on the state.
std::vector<double> sample_mode_paths(const CylinderGrid& grid, Rng& rng,
                                      bool dirichlet) {
  const int kmax = angular_mode_cutoff(grid);
  const int nt = grid.n_t();
  const double dt = grid.dt();
  std::vector<double> paths(static_cast<std::size_t>(2 * kmax) * nt);
  for (int k = 1; k <= kmax; ++k) {
    const double var = 1.0 / k;
    const double rho = std::exp(-k * dt);
    const double step_sd = std::sqrt(var * (1.0 - rho * rho));
    for (int comp = 0; comp < 2; ++comp) {
      double* p = paths.data() + static_cast<std::size_t>(2 * (k - 1) + comp) * nt;
      double first_var = var;
      if (dirichlet) {
        const double s = grid.t_center(0) - grid.t_min();
        first_var = var * (1.0 - std::exp(-2.0 * k * s));
      }
      p[0] = std::sqrt(first_var) * rng.normal();
      for (int it = 1; it < nt; ++it) {
        p[it] = rho * p[it - 1] + step_sd * rng.normal();
      }
    }
  }
  return paths;
}

Field synthesize(const CylinderGrid& grid, const std::vector<double>& paths) {
  const int kmax = angular_mode_cutoff(grid);
  const int nt = grid.n_t();
  const int ntheta = grid.n_theta();
  // trig tables at cell centers
  std::vector<double> cos_tab(static_cast<std::size_t>(kmax) * ntheta);
  std::vector<double> sin_tab(static_cast<std::size_t>(kmax) * ntheta);
  for (int k = 1; k <= kmax; ++k) {
    for (int j = 0; j < ntheta; ++j) {
      const double th = grid.theta_center(j);
      cos_tab[static_cast<std::size_t>(k - 1) * ntheta + j] = std::cos(k * th);
      sin_tab[static_cast<std::size_t>(k - 1) * ntheta + j] = std::sin(k * th);
    }
  }
  Field field;
  field.geometry = grid;
  field.pinning = Pinning::kModuloConstant;
  field.values.assign(grid.num_cells(), 0.0);
  for (int it = 0; it < nt; ++it) {
    double* row = field.values.data() + static_cast<std::size_t>(it) * ntheta;
    for (int k = 1; k <= kmax; ++k) {
      const double a = paths[static_cast<std::size_t>(2 * (k - 1)) * nt + it];
      const double b = paths[static_cast<std::size_t>(2 * (k - 1) + 1) * nt + it];
      const double* ct = cos_tab.data() + static_cast<std::size_t>(k - 1) * ntheta;
      const double* st = sin_tab.data() + static_cast<std::size_t>(k - 1) * ntheta;
      for (int j = 0; j < ntheta; ++j) {
        row[j] += a * ct[j] + b * st[j];
      }
    }
  }
  return field;
}

}  // namespace

Field sample_angular_gff(const CylinderGrid& grid, std::uint64_t seed) {
  Rng rng(seed);
  return synthesize(grid, sample_mode_paths(grid, rng, /*dirichlet=*/false));
}

Field sample_angular_gff_dirichlet(const CylinderGrid& grid, std::uint64_t seed) {
  Rng rng(seed);
  return synthesize(grid, sample_mode_paths(grid, rng, /*dirichlet=*/true));
}

double angular_variance(const CylinderGrid& grid) {
  double v = 0.0;
  for (int k = 1; k <= angular_mode_cutoff(grid); ++k) v += 1.0 / k;
  return v;
}

double angular_variance_dirichlet(const CylinderGrid& grid, double t_above_min) {
  double v = 0.0;
  for (int k = 1; k <= angular_mode_cutoff(grid); ++k) {
    v += (1.0 - std::exp(-2.0 * k * t_above_min)) / k;
  }
  return v;
}

std::vector<double> sample_radial_brownian(const CylinderGrid& grid,
                                           std::uint64_t seed) {
  Rng rng(seed);
  const int nt = grid.n_t();
  std::vector<double> path(nt, 0.0);
  // rows with positive centers, ascending from t = 0
  int first_pos = nt;
  for (int it = 0; it < nt; ++it) {
    if (grid.t_center(it) > 0.0) {
      first_pos = it;
      break;
    }
  }
  double prev_t = 0.0, prev_v = 0.0;
  for (int it = first_pos; it < nt; ++it) {
    const double t = grid.t_center(it);
    prev_v += std::sqrt(t - prev_t) * rng.normal();
    prev_t = t;
    path[it] = prev_v;
  }
  // rows with non-positive centers, descending from t = 0 (independent side)
  prev_t = 0.0;
  prev_v = 0.0;
  for (int it = first_pos - 1; it >= 0; --it) {
    const double t = grid.t_center(it);
    prev_v += std::sqrt(prev_t - t) * rng.normal();
    prev_t = t;
    path[it] = prev_v;
  }
  return path;
}

std::vector<double> sample_radial_brownian_dirichlet(const CylinderGrid& grid,
                                                     std::uint64_t seed) {
  Rng rng(seed);
  const int nt = grid.n_t();
  std::vector<double> path(nt, 0.0);
  double prev_t = grid.t_min(), prev_v = 0.0;
  for (int it = 0; it < nt; ++it) {
    const double t = grid.t_center(it);
    prev_v += std::sqrt(t - prev_t) * rng.normal();
    prev_t = t;
    path[it] = prev_v;
  }
  return path;
}

Field assemble_cylinder_field(const CylinderGrid& grid,
                              const std::vector<double>& radial,
                              const Field& angular) {
  if (radial.size() != static_cast<std::size_t>(grid.n_t())) {
    throw GeometryError("radial path length does not match the grid");
  }
  Field field = angular;
  field.geometry = grid;
  for (int it = 0; it < grid.n_t(); ++it) {
    for (int j = 0; j < grid.n_theta(); ++j) {
      field.values[grid.index(it, j)] += radial[it];
    }
  }
  return field;
}

double cylinder_covariance(const CylinderGrid& grid, double t1, double theta1,
                           double t2, double theta2) {
  // radial: two-sided Brownian motion pinned at t = 0
  double cov = 0.0;
  if (t1 > 0.0 && t2 > 0.0) {
    cov = std::min(t1, t2);
  } else if (t1 < 0.0 && t2 < 0.0) {
    cov = std::min(-t1, -t2);
  }
  // angular modes
  const double dth = theta1 - theta2;
  const double adt = std::abs(t1 - t2);
  for (int k = 1; k <= angular_mode_cutoff(grid); ++k) {
    cov += std::exp(-k * adt) * std::cos(k * dth) / k;
  }
  return cov;
}

}  // namespace lqg
