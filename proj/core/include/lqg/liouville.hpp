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

#ifndef LQG_LIOUVILLE_HPP
#define LQG_LIOUVILLE_HPP

#include <cstdint>
#include <optional>

#include "lqg/background.hpp"
#include "lqg/chaos.hpp"
#include "lqg/ensemble.hpp"
#include "lqg/gff_planar.hpp"
#include "lqg/params.hpp"
#include "lqg/probes.hpp"
#include "lqg/stats.hpp"

namespace lqg {

/// Deterministic part of the insertion field for a pinned background:
/// 2Q * m(z) plus the sum of alpha_i * G(z, z_i). An insertion at infinity is
/// never evaluated through the Green's function; it folds into the closed
/// radial (circle pinning) or curvature (sphere pinning) terms.
SingularPart liouville_singular_part(const BackgroundMeasure& rho,
                                     const LqgParams& params);

struct LiouvilleField {
  Field gaussian;
  SingularPart singular;
};

struct LiouvilleOptions {
  int threads = 1;
  double ess_floor_frac = 0.1;
  /// Multiplies the weight exponent -s/gamma; the background-independence
  /// sensitivity control sets it to a wrong value on purpose.
  double weight_exponent_shift = 0.0;
};

/// Gaussian part plus singular descriptor on the requested grid.
///
/// Planar grids sample the pinned whole-plane field directly (the caller
/// supplies a domain comfortably larger than the observation window).
/// Cylinder grids use the exact log-coordinate decomposition: two-sided
/// Brownian radial part pinned at t = 0, stationary angular part, and the
/// chart term -Q t in the descriptor. Sphere pinning recenters by the
/// field's spherical average.
LiouvilleField assemble_liouville_field(const BackgroundMeasure& rho,
                                        const LqgParams& params,
                                        const GridVariant& grid,
                                        std::uint64_t seed);

/// n independent draws of the insertion field; each sample carries the
/// normalized measure observables, the weight mu(C)^{-s/gamma} and the field
/// shift -log(mu(C))/gamma. The ensemble exposes self-normalized weights and
/// the effective sample size; an ESS below floor flags the ensemble instead
/// of aborting the run.
Ensemble unit_volume_sample(const LqgParams& params,
                            const BackgroundMeasure& rho,
                            const GridVariant& grid, int n,
                            std::uint64_t root_seed, const ProbeSet& probes,
                            const LiouvilleOptions& opts = {});

/// Samples with sphere and circle pinning and compares the weighted
/// observable distributions; the two are expected to agree in law.
ComparisonReport background_independence_test(
    const LqgParams& params, const GridVariant& grid, int n,
    std::uint64_t root_seed, const ProbeSet& probes,
    const LiouvilleOptions& opts = {}, const TwoSampleOptions& test_opts = {},
    const std::optional<LiouvilleOptions>& opts_b = std::nullopt);

/// Mobius map z -> (a z + b) / (c z + d).
struct MobiusMap {
  Complex a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};

  static MobiusMap identity() { return {}; }
  static MobiusMap inversion() { return {{0, 0}, {1, 0}, {1, 0}, {0, 0}}; }
  static MobiusMap scaling(Complex lambda) {
    return {lambda, {0, 0}, {0, 0}, {1, 0}};
  }

  Complex apply(Complex z) const { return (a * z + b) / (c * z + d); }
  double abs_derivative(Complex z) const;
  void validate() const;
};

/// Field transform h o psi + Q log|psi'| onto the target grid with bilinear
/// resampling; points mapping outside the source grid read as zero.
Field mobius_apply_field(const Field& field, const MobiusMap& psi,
                         const PlanarGrid& target, double Q);

struct PushforwardResult {
  Measure measure;
  double clipped_mass = 0.0;  // mass that left the target grid
};

/// Pushforward of cell masses under the forward map psi; mass landing
/// outside the target grid is reported, not silently dropped.
PushforwardResult mobius_apply_measure(const Measure& measure,
                                       const MobiusMap& psi,
                                       const PlanarGrid& target);

/// Smallest plane radius whose fitted expected normalized mass beyond it is
/// below target (declared in chaos.hpp, implemented here with the insertion
/// field as the pilot).
// TailEstimate tail_truncation(...): see chaos.hpp.

}  // namespace lqg

#endif  // LQG_LIOUVILLE_HPP
