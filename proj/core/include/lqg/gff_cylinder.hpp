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

#ifndef LQG_GFF_CYLINDER_HPP
#define LQG_GFF_CYLINDER_HPP

#include <cstdint>
#include <vector>

#include "lqg/grids.hpp"

namespace lqg {

// Cylinder fields decompose into a radial part (constant on circles) and an
// angular part (zero mean on every circle). The angular part is a sum over
// nonzero Fourier modes of independent Gauss-Markov processes in t: the pair
// (a_k, b_k) multiplying cos(k theta), sin(k theta) has stationary variance
// 1/k per coefficient and relaxation exp(-k |t-s|), which reproduces the
// e^{-|k||t-s|}/(2|k|) covariance per complex mode. Modes are truncated at
// k_max = n_theta/2 - 1 (the Nyquist row is not representable on the
// half-offset theta grid).

/// Largest angular mode carried by a grid.
int angular_mode_cutoff(const CylinderGrid& grid);

/// Stationary angular field on the full cylinder: every circle mean is zero.
Field sample_angular_gff(const CylinderGrid& grid, std::uint64_t seed);

/// Angular field vanishing at t = t_min (image-charge covariance); this is
/// the angular part of a zero-boundary disk field in log coordinates.
Field sample_angular_gff_dirichlet(const CylinderGrid& grid, std::uint64_t seed);

/// Pointwise variance of the stationary angular field (truncated mode sum).
double angular_variance(const CylinderGrid& grid);

/// Same for the Dirichlet variant at height t above t_min.
double angular_variance_dirichlet(const CylinderGrid& grid, double t_above_min);

/// Two-sided Brownian path pinned to zero at t = 0, one value per t row.
/// This is the radial part of the whole-plane field pinned on the unit
/// circle.
std::vector<double> sample_radial_brownian(const CylinderGrid& grid,
                                           std::uint64_t seed);

/// Brownian path started at zero at t = t_min (radial part of the
/// zero-boundary disk field in log coordinates).
std::vector<double> sample_radial_brownian_dirichlet(const CylinderGrid& grid,
                                                     std::uint64_t seed);

/// Assembles radial + angular into a cylinder field.
Field assemble_cylinder_field(const CylinderGrid& grid,
                              const std::vector<double>& radial,
                              const Field& angular);

/// Covariance of the circle-pinned whole-plane field between two cylinder
/// points, from the closed form (Brownian radial part plus truncated angular
/// mode sum). Test oracle for the sampler pair above.
double cylinder_covariance(const CylinderGrid& grid, double t1, double theta1,
                           double t2, double theta2);

}  // namespace lqg

#endif  // LQG_GFF_CYLINDER_HPP
