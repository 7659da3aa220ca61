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

#ifndef LQG_CHAOS_HPP
#define LQG_CHAOS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "lqg/grids.hpp"
#include "lqg/params.hpp"

namespace lqg {

class DirichletGffSampler;

/// Nonnegative mass per grid cell with a cached total.
struct Measure {
  GridVariant geometry;
  std::vector<double> cell_mass;
  double total = 0.0;

  const PlanarGrid* planar() const noexcept {
    return std::get_if<PlanarGrid>(&geometry);
  }
  const CylinderGrid* cylinder() const noexcept {
    return std::get_if<CylinderGrid>(&geometry);
  }
  void recompute_total() {
    total = 0.0;
    for (double m : cell_mass) total += m;
  }
};

/// Deterministic analytic log-singularity added to a sampled field before
/// exponentiation. Evaluable in the plane chart and, through z = exp(-w), on
/// the cylinder; `cylinder_drift * t` carries chart-only terms such as the
/// coordinate-change -Q t.
struct SingularPart {
  struct LogTerm {
    Complex point;
    double coef;  // coef * log|z - point|
  };
  std::vector<LogTerm> log_terms;
  double radial_log_coef = 0.0;  // coef * log(|z| v 1)
  double sphere_log_coef = 0.0;  // coef * log(1 + |z|^2)
  double constant = 0.0;
  double cylinder_drift = 0.0;   // coef * t, cylinder chart only

  double eval_plane(Complex z) const;
  double eval_cylinder(double t, double theta) const;
  bool empty() const noexcept {
    return log_terms.empty() && radial_log_coef == 0.0 &&
           sphere_log_coef == 0.0 && constant == 0.0 && cylinder_drift == 0.0;
  }
};

/// Effective lattice regularization for the chaos measure: cell mass is
///   cell_area * (kappa * s_cell)^{gamma^2/2} * exp(gamma * (field + singular)).
/// kappa is fixed once per lattice type by matching the regularized field
/// variance to its continuum structure, so expected masses reproduce the
/// closed forms. Both constructors are deterministic.
struct ChaosCalibration {
  double s_cell = 0.0;
  double kappa = 1.0;

  static ChaosCalibration for_planar(const DirichletGffSampler& sampler);
  static ChaosCalibration for_cylinder(const CylinderGrid& grid);
};

/// Gaussian multiplicative chaos measure of the field. Cells containing a
/// log-term singularity are evaluated half a cell diagonal away from it.
Measure gmc_measure(const Field& field, double gamma, const SingularPart& sing,
                    const ChaosCalibration& cal);

/// Measure scaled to total one.
Measure normalize(const Measure& measure);

/// Monte Carlo estimate of E[mu(C)^q].
struct MomentEstimate {
  double q = 0.0;
  double value = 0.0;
  double std_error = 0.0;
  bool admissible = true;   // q below the finiteness threshold
  double threshold = 0.0;
};

/// n >= 100 draws from the measure-producing closure; jackknife standard
/// error. When params are supplied the estimate is flagged inadmissible for
/// q at or above the moment threshold (it is still returned).
MomentEstimate moment_estimate(
    const std::function<Measure(std::uint64_t)>& sampler, double q, int n,
    std::uint64_t root_seed, const LqgParams* params = nullptr);

/// Far-field truncation control fitted from pilot simulations.
struct TailEstimate {
  double truncation_radius = 0.0;  // plane radius e^{t*}
  std::vector<double> annulus_t;   // band centers in log scale
  std::vector<double> annulus_mass;
  double tail_bound = 0.0;         // estimated normalized mass beyond radius
  double b1 = 0.0, b2 = 0.0;       // fitted decay mass(n) ~ b1 exp(-b2 n)
};

struct TailTruncationOptions {
  double max_log_radius = 12.0;
  int pilot_samples = 48;
  std::uint64_t seed = 2026;
};

/// Smallest radius whose estimated expected normalized mass beyond it stays
/// below target_tail_mass, from a geometric fit to pilot annulus masses.
/// Throws BudgetError (carrying the achieved tail) when the target cannot be
/// met inside max_log_radius.
TailEstimate tail_truncation(double gamma,
                             const std::vector<Insertion>& insertions,
                             double target_tail_mass,
                             const TailTruncationOptions& opts = {});

}  // namespace lqg

#endif  // LQG_CHAOS_HPP
