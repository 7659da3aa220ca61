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

#ifndef LQG_BACKGROUND_HPP
#define LQG_BACKGROUND_HPP

#include <functional>

#include "lqg/grids.hpp"

namespace lqg {

/// Spherical density g(x) = 1/(pi * (1+|x|^2)^2), total mass one.
double spherical_density(Complex z);

enum class BackgroundKind : std::uint8_t {
  kSphere = 0,       // normalized spherical area density
  kUnitCircle = 1,   // uniform probability measure on the unit circle
  kCustom = 2,       // caller-supplied planar density
};

/// Probability measure used to pin the additive constant of the whole-plane
/// field. For the two built-in kinds, the log-potential m(z) = integral of
/// log(1/|z-w|) against the measure and the constant theta are closed forms:
///
///   circle:  m(z) = -log(|z| v 1),            theta = 0
///   sphere:  m(z) = -(1/2) log(1 + |z|^2),    theta = -1/2
///
/// Custom densities fall back to two-dimensional quadrature on a square of
/// half-width `support_radius` with `quadrature_nodes` points per axis.
class BackgroundMeasure {
 public:
  static BackgroundMeasure sphere();
  static BackgroundMeasure unit_circle();
  static BackgroundMeasure custom(std::function<double(Complex)> density,
                                  double support_radius,
                                  int quadrature_nodes = 256);

  BackgroundKind kind() const noexcept { return kind_; }

  /// Density at z; the circle measure has no planar density and throws.
  double density(Complex z) const;

  /// m(z) = integral of log(1/|z-w|) dp(w).
  double log_potential(Complex z) const;

  /// theta = - double integral of log|z-w| dp(z) dp(w).
  double theta() const;

  /// Average of a grid field against the measure. For the circle kind this is
  /// the unit-circle average; otherwise cell quadrature of density * value,
  /// renormalized by the in-grid measure mass.
  double field_average(const Field& field) const;

 private:
  explicit BackgroundMeasure(BackgroundKind kind) : kind_(kind) {}

  BackgroundKind kind_;
  std::function<double(Complex)> density_;
  double support_radius_ = 0.0;
  int quad_nodes_ = 0;
  mutable double theta_cache_ = 0.0;
  mutable bool theta_ready_ = false;
};

/// Green's function of the pinned whole-plane field:
///   G(z, w) = log(1/|z-w|) - m(z) - m(w) + theta.
/// The additive constant is the one forced by the pinning (the average of
/// G(z, .) against the background measure is identically zero).
double green_function(const BackgroundMeasure& rho, Complex x, Complex y);

/// Dirichlet Green's function of the disk of radius R (zero boundary,
/// -Laplacian G = 2*pi*delta convention):
///   G(x, y) = -log|x-y| + log(|R^2 - x*conj(y)| / R).
double green_disk(double radius, Complex x, Complex y);

}  // namespace lqg

#endif  // LQG_BACKGROUND_HPP
