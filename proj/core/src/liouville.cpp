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

#include "lqg/liouville.hpp"

#include <algorithm>
#include <cmath>

#include "lqg/gff_cylinder.hpp"
#include "lqg/parallel.hpp"
#include "lqg/rng.hpp"

namespace lqg {

SingularPart liouville_singular_part(const BackgroundMeasure& rho,
                                     const LqgParams& params) {
  for (const auto& ins : params.insertions) {
    if (!ins.at_infinity && !(ins.alpha < params.Q)) {
      throw ParameterError("insertion weight must stay below Q");
    }
  }
  SingularPart sing;
  const double Q = params.Q;
  switch (rho.kind()) {
    case BackgroundKind::kUnitCircle: {
      // 2Q m(z) = -2Q log(|z| v 1); G(z,w) = -log|z-w| + log(|z|v1) + log(|w|v1)
      sing.radial_log_coef = -2.0 * Q;
      for (const auto& ins : params.insertions) {
        if (ins.at_infinity) {
          sing.radial_log_coef += ins.alpha;  // G(z, inf) = log(|z| v 1)
          continue;
        }
        sing.log_terms.push_back({ins.z, -ins.alpha});
        sing.radial_log_coef += ins.alpha;
        sing.constant += ins.alpha * std::log(std::max(std::abs(ins.z), 1.0));
      }
      break;
    }
    case BackgroundKind::kSphere: {
      // 2Q m(z) = -Q log(1+|z|^2);
      // G(z,w) = -log|z-w| + (1/2)log(1+|z|^2) + (1/2)log(1+|w|^2) - 1/2
      sing.sphere_log_coef = -Q;
      for (const auto& ins : params.insertions) {
        if (ins.at_infinity) {
          // G(z, inf) = (1/2) log(1+|z|^2) - 1/2
          sing.sphere_log_coef += 0.5 * ins.alpha;
          sing.constant -= 0.5 * ins.alpha;
          continue;
        }
        sing.log_terms.push_back({ins.z, -ins.alpha});
        sing.sphere_log_coef += 0.5 * ins.alpha;
        sing.constant +=
            ins.alpha * (0.5 * std::log1p(std::norm(ins.z)) - 0.5);
      }
      break;
    }
    case BackgroundKind::kCustom:
      throw ConfigError("closed-form singular part needs the circle or "
                        "sphere background; custom densities go through "
                        "assemble_liouville_field on a planar grid");
  }
  return sing;
}

namespace {

// Custom pinning: smooth part of the display evaluated per cell into the
// Gaussian field, log singularities kept analytic in the descriptor.
LiouvilleField assemble_custom_planar(const BackgroundMeasure& rho,
                                      const LqgParams& params,
                                      const PlanarGrid& grid,
                                      std::uint64_t seed) {
  DirichletGffSampler sampler(grid);
  Field field = sample_pinned_whole_plane_gff(sampler, rho, seed);
  SingularPart sing;
  const double theta = rho.theta();
  double alpha_sum_const = 0.0;
  for (const auto& ins : params.insertions) {
    if (ins.at_infinity) {
      throw ConfigError("insertion at infinity is not supported for custom "
                        "background measures");
    }
    sing.log_terms.push_back({ins.z, -ins.alpha});
    alpha_sum_const += ins.alpha * (theta - rho.log_potential(ins.z));
  }
  sing.constant = alpha_sum_const;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    if (!grid.interior(i)) continue;
    const Complex z = grid.center(i);
    double smooth = 2.0 * params.Q * rho.log_potential(z);
    for (const auto& ins : params.insertions) {
      smooth -= ins.alpha * rho.log_potential(z);
    }
    field.values[i] += smooth;
  }
  return {std::move(field), std::move(sing)};
}

}  // namespace

LiouvilleField assemble_liouville_field(const BackgroundMeasure& rho,
                                        const LqgParams& params,
                                        const GridVariant& grid,
                                        std::uint64_t seed) {
  if (rho.kind() == BackgroundKind::kCustom) {
    const auto* pg = std::get_if<PlanarGrid>(&grid);
    if (pg == nullptr) {
      throw ConfigError("custom background measures need a planar grid");
    }
    return assemble_custom_planar(rho, params, *pg, seed);
  }

  SingularPart sing = liouville_singular_part(rho, params);

  if (const auto* pg = std::get_if<PlanarGrid>(&grid)) {
    DirichletGffSampler sampler(*pg);
    Field field = sample_pinned_whole_plane_gff(sampler, rho, seed);
    return {std::move(field), std::move(sing)};
  }

  // Cylinder chart: exact radial/angular decomposition of the circle-pinned
  // whole-plane field, plus the coordinate-change term -Q t.
  const auto& cg = std::get<CylinderGrid>(grid);
  const auto radial =
      sample_radial_brownian(cg, derive_stream_seed(seed, "radial"));
  Field angular = sample_angular_gff(cg, derive_stream_seed(seed, "angular"));
  Field field = assemble_cylinder_field(cg, radial, angular);
  field.pinning = Pinning::kCircleMeanZero;
  sing.cylinder_drift += -params.Q;

  if (rho.kind() == BackgroundKind::kSphere) {
    // h_sphere = h_circle - (h_circle, sphere density); cell quadrature of
    // the pulled-back density e^{-2t} / (pi (1+e^{-2t})^2).
    double num = 0.0, mass = 0.0;
    for (int it = 0; it < cg.n_t(); ++it) {
      const double t = cg.t_center(it);
      const double e = std::exp(-2.0 * t);
      const double dens = e / (M_PI * (1.0 + e) * (1.0 + e)) * cg.cell_area();
      for (int ith = 0; ith < cg.n_theta(); ++ith) {
        num += dens * field.values[cg.index(it, ith)];
        mass += dens;
      }
    }
    field.add_constant(-num / mass);
    field.pinning = Pinning::kSphericalMeanZero;
  }
  return {std::move(field), std::move(sing)};
}

Ensemble unit_volume_sample(const LqgParams& params,
                            const BackgroundMeasure& rho,
                            const GridVariant& grid, int n,
                            std::uint64_t root_seed, const ProbeSet& probes,
                            const LiouvilleOptions& opts) {
  if (params.bound_status == BoundStatus::kViolated) {
    throw ParameterError("insertion weights violate the admissibility bounds");
  }
  if (n < 1) throw ParameterError("need n >= 1 samples");

  // Factorizations and calibrations are built once and shared across draws.
  std::optional<DirichletGffSampler> planar_sampler;
  ChaosCalibration cal;
  if (const auto* pg = std::get_if<PlanarGrid>(&grid)) {
    planar_sampler.emplace(*pg);
    cal = ChaosCalibration::for_planar(*planar_sampler);
  } else {
    cal = ChaosCalibration::for_cylinder(std::get<CylinderGrid>(grid));
  }
  const SingularPart sing = liouville_singular_part(rho, params);
  const double exponent = -params.s / params.gamma + opts.weight_exponent_shift;

  Ensemble ens;
  ens.probe_names = probes.names();
  ens.probe_fingerprint = probes.fingerprint();
  ens.root_seed = root_seed;
  ens.samples.resize(n);
  ens.label = rho.kind() == BackgroundKind::kSphere ? "unit-volume-sphere-pinned"
                                                    : "unit-volume-circle-pinned";

  parallel_for(n, opts.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_stream_seed(root_seed, "liouville", i);
    Field gaussian;
    if (planar_sampler) {
      gaussian = sample_pinned_whole_plane_gff(*planar_sampler, rho, seed);
    } else {
      // cylinder path of assemble_liouville_field, minus the descriptor work
      const auto& cg = std::get<CylinderGrid>(grid);
      const auto radial =
          sample_radial_brownian(cg, derive_stream_seed(seed, "radial"));
      Field angular =
          sample_angular_gff(cg, derive_stream_seed(seed, "angular"));
      gaussian = assemble_cylinder_field(cg, radial, angular);
      if (rho.kind() == BackgroundKind::kSphere) {
        double num = 0.0, mass = 0.0;
        for (int it = 0; it < cg.n_t(); ++it) {
          const double t = cg.t_center(it);
          const double e = std::exp(-2.0 * t);
          const double dens =
              e / (M_PI * (1.0 + e) * (1.0 + e)) * cg.cell_area();
          for (int ith = 0; ith < cg.n_theta(); ++ith) {
            num += dens * gaussian.values[cg.index(it, ith)];
            mass += dens;
          }
        }
        gaussian.add_constant(-num / mass);
      }
    }
    const Measure mu = gmc_measure(gaussian, params.gamma, sing, cal);
    EnsembleSample& s = ens.samples[i];
    s.seed = seed;
    s.pre_total = mu.total;
    s.weight = std::pow(mu.total, exponent);
    s.field_shift = -std::log(mu.total) / params.gamma;
    s.observables = probes.observe(mu);
  });

  bool any_finite = false;
  for (const auto& s : ens.samples) {
    if (std::isfinite(s.weight) && s.weight > 0.0) any_finite = true;
  }
  if (!any_finite) throw NumericError("all importance weights are non-finite");
  ens.ess_warning = ens.ess() < opts.ess_floor_frac * n;
  return ens;
}

ComparisonReport background_independence_test(
    const LqgParams& params, const GridVariant& grid, int n,
    std::uint64_t root_seed, const ProbeSet& probes,
    const LiouvilleOptions& opts, const TwoSampleOptions& test_opts,
    const std::optional<LiouvilleOptions>& opts_b) {
  if (params.insertions.size() != 3) {
    throw ParameterError("background-independence test expects 3 insertions");
  }
  const Ensemble ga = unit_volume_sample(
      params, BackgroundMeasure::sphere(), grid, n,
      derive_stream_seed(root_seed, "bg-sphere"), probes, opts);
  const Ensemble gc = unit_volume_sample(
      params, BackgroundMeasure::unit_circle(), grid, n,
      derive_stream_seed(root_seed, "bg-circle"), probes,
      opts_b.value_or(opts));
  ComparisonReport rep = weighted_two_sample_test(
      ga.comparison_input(), gc.comparison_input(), ga.probe_names, test_opts);
  rep.fingerprint_a = ga.probe_fingerprint;
  rep.fingerprint_b = gc.probe_fingerprint;
  return rep;
}

double MobiusMap::abs_derivative(Complex z) const {
  const Complex den = c * z + d;
  return std::abs(a * d - b * c) / std::norm(den);
}

void MobiusMap::validate() const {
  if (std::abs(a * d - b * c) == 0.0) {
    throw ParameterError("degenerate Mobius map (ad - bc = 0)");
  }
}

Field mobius_apply_field(const Field& field, const MobiusMap& psi,
                         const PlanarGrid& target, double Q) {
  psi.validate();
  const auto* src = field.planar();
  if (src == nullptr) throw GeometryError("mobius_apply_field expects planar");
  Field out;
  out.geometry = target;
  out.pinning = Pinning::kModuloConstant;
  out.values.assign(target.num_cells(), 0.0);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    if (!target.interior(i)) continue;
    const Complex w = target.center(i);
    const Complex z = psi.apply(w);
    double v = 0.0;
    // off-grid reads count as zero field
    if (std::abs(z.real()) < src->domain_radius() - src->cell_size() &&
        std::abs(z.imag()) < src->domain_radius() - src->cell_size()) {
      v = interpolate(field, z);
    }
    out.values[i] = v + Q * std::log(psi.abs_derivative(w));
  }
  return out;
}

PushforwardResult mobius_apply_measure(const Measure& measure,
                                       const MobiusMap& psi,
                                       const PlanarGrid& target) {
  psi.validate();
  const auto* src = measure.planar();
  if (src == nullptr) {
    throw GeometryError("mobius_apply_measure expects a planar measure");
  }
  PushforwardResult res;
  res.measure.geometry = target;
  res.measure.cell_mass.assign(target.num_cells(), 0.0);
  const double cell = target.cell_size();
  const double r = target.domain_radius();
  for (std::size_t i = 0; i < measure.cell_mass.size(); ++i) {
    const double m = measure.cell_mass[i];
    if (m == 0.0) continue;
    const Complex z = psi.apply(src->center(i));
    const double fx = (z.real() + r) / cell - 0.5;
    const double fy = (z.imag() + r) / cell - 0.5;
    const int ix = static_cast<int>(std::floor(fx));
    const int iy = static_cast<int>(std::floor(fy));
    const double ax = fx - ix, ay = fy - iy;
    const double w[4] = {(1 - ax) * (1 - ay), ax * (1 - ay), (1 - ax) * ay,
                         ax * ay};
    const int cx[4] = {ix, ix + 1, ix, ix + 1};
    const int cy[4] = {iy, iy, iy + 1, iy + 1};
    for (int k = 0; k < 4; ++k) {
      if (w[k] == 0.0) continue;
      if (cx[k] < 0 || cy[k] < 0 || cx[k] >= target.resolution() ||
          cy[k] >= target.resolution()) {
        res.clipped_mass += m * w[k];
      } else {
        res.measure.cell_mass[target.index(cx[k], cy[k])] += m * w[k];
      }
    }
  }
  res.measure.recompute_total();
  return res;
}

TailEstimate tail_truncation(double gamma,
                             const std::vector<Insertion>& insertions,
                             double target_tail_mass,
                             const TailTruncationOptions& opts) {
  LqgParams params = derive_params(gamma, insertions);
  bool has_inf = false;
  for (const auto& ins : insertions) {
    if (ins.at_infinity) {
      has_inf = true;
      if (!(ins.alpha < params.Q)) {
        throw ParameterError("tail control needs the insertion at infinity "
                             "to carry weight below Q");
      }
    }
  }
  if (!has_inf) {
    throw ParameterError("tail control expects an insertion at infinity");
  }
  if (!(target_tail_mass > 0.0)) {
    throw ParameterError("target tail mass must be positive");
  }

  const double t_lo = -opts.max_log_radius - 1.0;
  const CylinderGrid grid(t_lo, 3.0, static_cast<int>((3.0 - t_lo) * 8), 64);
  const ChaosCalibration cal = ChaosCalibration::for_cylinder(grid);
  const BackgroundMeasure rho = BackgroundMeasure::unit_circle();
  SingularPart sing = liouville_singular_part(rho, params);
  sing.cylinder_drift += -params.Q;

  const int bands = static_cast<int>(opts.max_log_radius);
  TailEstimate est;
  est.annulus_t.resize(bands);
  est.annulus_mass.assign(bands, 0.0);
  for (int b = 0; b < bands; ++b) est.annulus_t[b] = b + 0.5;

  for (int p = 0; p < opts.pilot_samples; ++p) {
    const std::uint64_t seed = derive_stream_seed(opts.seed, "tail-pilot", p);
    const auto radial =
        sample_radial_brownian(grid, derive_stream_seed(seed, "radial"));
    Field angular = sample_angular_gff(grid, derive_stream_seed(seed, "angular"));
    const Field field = assemble_cylinder_field(grid, radial, angular);
    const Measure mu = normalize(gmc_measure(field, gamma, sing, cal));
    for (int it = 0; it < grid.n_t(); ++it) {
      const double t = grid.t_center(it);
      if (t >= 0.0) continue;
      const int band = std::min(bands - 1, static_cast<int>(-t));
      for (int ith = 0; ith < grid.n_theta(); ++ith) {
        est.annulus_mass[band] += mu.cell_mass[grid.index(it, ith)];
      }
    }
  }
  for (double& m : est.annulus_mass) m /= opts.pilot_samples;

  // least-squares fit of log mass(n) = log b1 - b2 * n over decaying bands
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int pts = 0;
  for (int b = 1; b < bands; ++b) {
    if (est.annulus_mass[b] <= 0.0) continue;
    const double x = est.annulus_t[b];
    const double y = std::log(est.annulus_mass[b]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++pts;
  }
  if (pts < 3) throw NumericError("tail fit has too few populated bands");
  const double slope = (pts * sxy - sx * sy) / (pts * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / pts;
  est.b2 = -slope;
  est.b1 = std::exp(intercept);
  if (!(est.b2 > 0.0)) {
    throw NumericError("pilot annulus masses do not decay");
  }

  auto tail_beyond = [&](double tstar) {
    // sum of b1 exp(-b2 n) over bands past tstar
    return est.b1 * std::exp(-est.b2 * tstar) / (1.0 - std::exp(-est.b2));
  };
  const double t_min_allowed = 1.0;
  double tstar = t_min_allowed;
  if (tail_beyond(tstar) > target_tail_mass) {
    tstar = std::log(est.b1 / ((1.0 - std::exp(-est.b2)) * target_tail_mass)) /
            est.b2;
  }
  if (tstar > opts.max_log_radius) {
    throw BudgetError("requested tail mass not achievable within the maximum "
                      "radius", tail_beyond(opts.max_log_radius));
  }
  est.truncation_radius = std::exp(tstar);
  est.tail_bound = tail_beyond(tstar);
  return est;
}

}  // namespace lqg
