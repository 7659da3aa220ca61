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

#ifndef LQG_SPHERE_HPP
#define LQG_SPHERE_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "lqg/chaos.hpp"
#include "lqg/ensemble.hpp"
#include "lqg/probes.hpp"

namespace lqg {

/// Radial process on the cylinder, unit quadratic variation per unit t,
/// maximum pinned at t = 0 (maxima embedding).
struct RadialPath {
  std::vector<double> t;
  std::vector<double> X;
  int maximum_index = 0;
};

/// Radial part of the two-marked-point surface for gamma in (sqrt(2), 2),
/// built from the excursion description: the level of the maximum M is drawn
/// from the exponential density e^{-2(Q-gamma) M} dM restricted to the range
/// the area window can reach, and each side of the path below the maximum is
/// |3d Brownian motion with drift (Q-gamma)| — the exact law of a drifted
/// Brownian motion conditioned to stay below its starting level. No Euler
/// discretization error enters.
///
/// For gamma <= sqrt(2) the excursion dimension 4 - 8/gamma^2 is
/// nonpositive and this path is not defined; sample_limiting_sphere covers
/// that regime (and is the default everywhere).
RadialPath sample_bessel_radial(double gamma,
                                std::pair<double, double> area_window,
                                const CylinderGrid& grid, std::uint64_t seed);

enum class Embedding : std::uint8_t {
  kMaxima = 0,       // horizontal shift fixed by the radial maximum
  kMobius01Inf = 1,  // third point rotated/translated to t = 0, theta = 0
};

/// One surface draw on the cylinder window.
struct SphereSample {
  Field field;       // cylinder chart, Gaussian part only
  SingularPart singular;
  Measure measure;   // normalized on the window
  double pre_total = 0.0;
  std::uint64_t seed = 0;
  Embedding embedding = Embedding::kMaxima;
  std::optional<std::pair<double, double>> third_point;  // (t, theta)
  double clipped_mass = 0.0;  // window-shift loss, fraction of pre_total
  long attempts = 0;
};

struct RejectionOptions {
  long max_attempts = 400000;
  double min_acceptance = 1e-6;
  int threads = 1;
};

/// Samples h = h0 - gamma log|z| - C (h0 the zero-boundary disk field) until
/// the total chaos mass lands in [e^{-gamma delta}, e^{gamma delta}], in log
/// coordinates: Brownian radial part from the boundary plus the angular part
/// with a Dirichlet end, drift -(Q - gamma) t - C. The accepted surface is
/// shifted so the radial maximum sits at the row nearest t = 0 of the output
/// grid and its measure renormalized on the window.
SphereSample sample_limiting_sphere(double gamma, double C, double delta,
                                    const CylinderGrid& grid,
                                    std::uint64_t seed,
                                    const RejectionOptions& opts = {});

/// Cell drawn with probability proportional to mass, plus uniform jitter
/// within the cell.
struct QuantumPoint {
  std::size_t cell = 0;
  double frac_a = 0.0;  // in [0,1): t (cylinder) / x (planar) offset
  double frac_b = 0.0;
};

QuantumPoint sample_quantum_point(const Measure& measure, std::uint64_t seed);

/// One three-marked-point surface: two-point draw, third point by quantum
/// area, embedding normalized by the whole-cell translation+rotation taking
/// the third point's cell to the one containing (t, theta) = (0+, 0+).
SphereSample three_point_single(double gamma, double C, double delta,
                                const CylinderGrid& grid, std::uint64_t seed,
                                const RejectionOptions& opts = {});

/// Three-marked-point ensemble: draw the two-point surface, pick the third
/// point by quantum area, and normalize the embedding by the cylinder
/// translation+rotation that sends it to the cell at (t, theta) = (0+, 0+).
/// Translation acts on whole cells, so the multiset of cell masses is
/// preserved up to window clipping.
Ensemble three_point_sample(double gamma, double C, double delta,
                            const CylinderGrid& grid, int n,
                            std::uint64_t root_seed, const ProbeSet& probes,
                            const RejectionOptions& opts = {});

/// First-passage self-test: drifted Brownian motion B_t + a t hitting level
/// A, simulated by Euler-Maruyama; compares against the inverse-Gaussian law
/// with mean A/a. Both variance conventions are reported, nothing is
/// asserted about them here.
struct HittingTimeReport {
  double a = 0.0, level = 0.0;
  int n = 0;
  double dt = 0.0;
  double empirical_mean = 0.0;
  double empirical_var = 0.0;
  double expected_mean = 0.0;        // A / a
  double var_standard = 0.0;         // A / a^3  (mean^3 / shape, shape = A^2)
  double var_alternative = 0.0;      // a * A
  double ks_distance = 0.0;          // to IG(A/a, A^2)
};

HittingTimeReport hitting_time_selftest(double a, double level, int n,
                                        std::uint64_t seed, double dt = 0.002);

}  // namespace lqg

#endif  // LQG_SPHERE_HPP
