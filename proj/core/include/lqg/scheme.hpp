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

#ifndef LQG_SCHEME_HPP
#define LQG_SCHEME_HPP

#include <cstdint>
#include <memory>

#include "lqg/chaos.hpp"
#include "lqg/ensemble.hpp"
#include "lqg/gff_planar.hpp"
#include "lqg/params.hpp"
#include "lqg/probes.hpp"

namespace lqg {

/// Finite-scale approximation of the three-insertion measure: a zero-boundary
/// field on the disk of radius 1/epsilon with two gamma-singularities inside
/// and boundary values arranged for a third singularity at infinity,
/// conditioned on the total-mass window and (optionally) on the unit-circle
/// average staying above its threshold.
struct SchemeConfig {
  double gamma = std::sqrt(2.0);
  double epsilon = 1.0 / 16.0;  // domain scale, grid radius is 1/epsilon
  double delta = 0.3;           // log-mass half-width
  Complex z1{0.0, 0.0};
  Complex z2{1.0, 0.0};
  int resolution = 512;
  bool enforce_h_event = true;

  void validate() const;
};

/// Conditioning data for one draw.
struct EventFlags {
  double total_mass = 0.0;
  bool e_flag = false;       // total in [e^{-gamma delta}, e^{gamma delta}]
  double circle_avg = 0.0;   // unit-circle average of the Gaussian part
  double tilde_a = 0.0;      // circle_avg + (2Q - 3 gamma) log(epsilon)
  bool h_flag = false;       // tilde_a >= -|log epsilon|^{2/3}
};

struct SchemeField {
  Field gaussian;
  SingularPart singular;
  /// Bound on the dropped harmonic remainder max_z |r_eps(z)|.
  double r_eps_bound = 0.0;
};

/// Shares one lattice factorization and calibration across draws.
class SchemeSampler {
 public:
  explicit SchemeSampler(const SchemeConfig& config);

  const SchemeConfig& config() const noexcept { return config_; }
  const PlanarGrid& grid() const noexcept;
  const LqgParams& params() const noexcept { return params_; }

  SchemeField field(std::uint64_t seed) const;
  EventFlags events(const SchemeField& f) const;

  /// Rejection-samples fields until the conditioning holds; observables of
  /// the accepted normalized measures (extended by zero outside the domain).
  Ensemble sample(int n, std::uint64_t root_seed, const ProbeSet& probes,
                  long max_attempts_per_sample = 20000, int threads = 1) const;

 private:
  SchemeConfig config_;
  LqgParams params_;
  std::shared_ptr<const DirichletGffSampler> gff_;
  ChaosCalibration cal_;
  SingularPart singular_;
  double r_eps_bound_ = 0.0;
};

/// Distribution triple for the integral identities below: X optionally
/// deterministic, Y either equal to X or X plus independent noise, Z a
/// bounded positive functional of X.
struct FubiniSpec {
  double x_mean = 0.0;
  double x_sd = 0.0;        // 0 = deterministic X
  bool y_equals_x = true;
  double y_noise_sd = 0.0;  // used when y_equals_x is false
  enum class ZKind : std::uint8_t { kOne, kExpHalfX, kAbsX } z_kind = ZKind::kOne;
  int samples = 20000;
  std::uint64_t seed = 11;
};

struct FubiniReport {
  // integral over x of E[Z 1{X in [-x-delta, delta-x]}] versus 2 delta E[Z]
  double f1_quadrature = 0.0;
  double f1_closed = 0.0;
  // integral over x of E[Z 1{X <= -x+delta, Y >= -x-delta}] versus
  // E[Z ((Y - X + 2 delta) v 0)]
  double f2_quadrature = 0.0;
  double f2_closed = 0.0;

  double f1_discrepancy() const { return std::abs(f1_quadrature - f1_closed); }
  double f2_discrepancy() const { return std::abs(f2_quadrature - f2_closed); }
};

/// Checks both identities on a common Monte Carlo sample: the left sides by
/// midpoint quadrature over x, the right sides from the closed forms.
FubiniReport fubini_selftest(const FubiniSpec& spec, double delta);

}  // namespace lqg

#endif  // LQG_SCHEME_HPP
