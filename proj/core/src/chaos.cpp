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

#include "lqg/chaos.hpp"

#include <algorithm>
#include <cmath>

#include "lqg/gff_cylinder.hpp"
#include "lqg/gff_planar.hpp"
#include "lqg/rng.hpp"

namespace lqg {

double SingularPart::eval_plane(Complex z) const {
  double v = constant;
  for (const auto& term : log_terms) {
    v += term.coef * std::log(std::abs(z - term.point));
  }
  if (radial_log_coef != 0.0) {
    v += radial_log_coef * std::log(std::max(std::abs(z), 1.0));
  }
  if (sphere_log_coef != 0.0) {
    v += sphere_log_coef * std::log1p(std::norm(z));
  }
  return v;
}

double SingularPart::eval_cylinder(double t, double theta) const {
  double v = constant + cylinder_drift * t;
  const Complex z = std::exp(Complex(-t, -theta));
  for (const auto& term : log_terms) {
    v += term.coef * std::log(std::abs(z - term.point));
  }
  // log(|z| v 1) = max(-t, 0) without the exp/log round trip
  if (radial_log_coef != 0.0) {
    v += radial_log_coef * std::max(-t, 0.0);
  }
  if (sphere_log_coef != 0.0) {
    // log(1 + e^{-2t}), stable for large |t|
    const double e = -2.0 * t;
    v += sphere_log_coef * (e > 0.0 ? e + std::log1p(std::exp(-e))
                                    : std::log1p(std::exp(e)));
  }
  return v;
}

ChaosCalibration ChaosCalibration::for_planar(const DirichletGffSampler& sampler) {
  ChaosCalibration cal;
  cal.s_cell = sampler.grid().cell_size();
  cal.kappa = std::exp(-sampler.log_variance_offset());
  return cal;
}

ChaosCalibration ChaosCalibration::for_cylinder(const CylinderGrid& grid) {
  ChaosCalibration cal;
  cal.s_cell = grid.dt();
  cal.kappa = std::exp(-(angular_variance(grid) + std::log(grid.dt())));
  return cal;
}

namespace {

bool cell_contains(Complex center, double half, Complex p) {
  return std::abs(p.real() - center.real()) <= half &&
         std::abs(p.imag() - center.imag()) <= half;
}

// Singular part at a planar cell center; if the cell contains a log-term
// point, evaluate half a cell diagonal away from it instead.
double singular_at_planar_cell(const SingularPart& sing, Complex center,
                               double cell) {
  Complex where = center;
  for (const auto& term : sing.log_terms) {
    if (cell_contains(center, cell / 2.0, term.point)) {
      where = term.point + Complex(cell / 2.0, cell / 2.0);
      break;
    }
  }
  return sing.eval_plane(where);
}

double singular_at_cylinder_cell(const SingularPart& sing,
                                 const CylinderGrid& grid, int it, int ith) {
  double t = grid.t_center(it);
  double th = grid.theta_center(ith);
  const Complex zc = grid.plane_point(it, ith);
  // cell extent in the plane chart is |z| * dt x |z| * dtheta around zc
  const double half_t = grid.dt() / 2.0, half_th = grid.dtheta() / 2.0;
  for (const auto& term : sing.log_terms) {
    if (term.point == Complex(0.0, 0.0)) continue;  // maps to t = +inf
    const Complex w = -std::log(term.point);  // (t, theta) of the insertion
    const double dth = std::remainder(w.imag() - th, 2.0 * M_PI);
    if (std::abs(w.real() - t) <= half_t && std::abs(dth) <= half_th) {
      t = w.real() + half_t;
      th = w.imag() + half_th;
      break;
    }
  }
  return sing.eval_cylinder(t, th);
}

}  // namespace

Measure gmc_measure(const Field& field, double gamma, const SingularPart& sing,
                    const ChaosCalibration& cal) {
  if (!(gamma > 0.0) || !(gamma < 2.0)) {
    throw ParameterError("gmc_measure needs gamma in (0, 2)");
  }
  if (!(cal.s_cell > 0.0) || !(cal.kappa > 0.0)) {
    throw ParameterError("chaos calibration must be positive");
  }
  Measure mu;
  mu.geometry = field.geometry;
  mu.cell_mass.assign(field.values.size(), 0.0);
  const double reg = 0.5 * gamma * gamma * std::log(cal.kappa * cal.s_cell);

  if (const auto* pg = field.planar()) {
    const double log_area = std::log(pg->cell_area());
    for (std::size_t i = 0; i < field.values.size(); ++i) {
      if (!pg->interior(i)) continue;
      const double s = singular_at_planar_cell(sing, pg->center(i), pg->cell_size());
      const double m = std::exp(log_area + reg + gamma * (field.values[i] + s));
      if (!std::isfinite(m)) {
        throw NumericError("non-finite chaos cell mass");
      }
      mu.cell_mass[i] = m;
    }
  } else {
    const auto& cg = std::get<CylinderGrid>(field.geometry);
    const double log_area = std::log(cg.cell_area());
    for (int it = 0; it < cg.n_t(); ++it) {
      for (int ith = 0; ith < cg.n_theta(); ++ith) {
        const std::size_t i = cg.index(it, ith);
        const double s = singular_at_cylinder_cell(sing, cg, it, ith);
        const double m = std::exp(log_area + reg + gamma * (field.values[i] + s));
        if (!std::isfinite(m)) {
          throw NumericError("non-finite chaos cell mass");
        }
        mu.cell_mass[i] = m;
      }
    }
  }
  mu.recompute_total();
  return mu;
}

Measure normalize(const Measure& measure) {
  if (!(measure.total > 0.0)) {
    throw NumericError("cannot normalize a measure with zero total mass");
  }
  Measure out = measure;
  const double inv = 1.0 / measure.total;
  for (double& m : out.cell_mass) m *= inv;
  out.total = 1.0;
  return out;
}

MomentEstimate moment_estimate(
    const std::function<Measure(std::uint64_t)>& sampler, double q, int n,
    std::uint64_t root_seed, const LqgParams* params) {
  if (n < 100) throw ParameterError("moment_estimate needs n >= 100");
  MomentEstimate est;
  est.q = q;
  if (params != nullptr) {
    est.threshold = params->moment_threshold();
    est.admissible = q < est.threshold;
  }
  std::vector<double> vals(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const Measure mu = sampler(derive_stream_seed(root_seed, "moment", i));
    vals[i] = std::pow(mu.total, q);
    sum += vals[i];
  }
  est.value = sum / n;
  // delete-1 jackknife
  double js = 0.0;
  for (int i = 0; i < n; ++i) {
    const double loo = (sum - vals[i]) / (n - 1);
    js += (loo - est.value) * (loo - est.value);
  }
  est.std_error = std::sqrt(js * (n - 1.0) / n);
  return est;
}

}  // namespace lqg
