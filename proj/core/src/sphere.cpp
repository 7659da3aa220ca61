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

#include "lqg/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lqg/gff_cylinder.hpp"
#include "lqg/parallel.hpp"
#include "lqg/rng.hpp"
#include "lqg/stats.hpp"

namespace lqg {

namespace {

// Distance below the running maximum on one side of the excursion:
// |3d Brownian motion with drift a|, sampled exactly on the u grid.
void sample_descent(Rng& rng, double a, const std::vector<double>& u,
                    std::vector<double>& d) {
  double wx = 0.0, wy = 0.0, wz = 0.0, prev_u = 0.0;
  d.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double sd = std::sqrt(u[i] - prev_u);
    wx += sd * rng.normal();
    wy += sd * rng.normal();
    wz += sd * rng.normal();
    prev_u = u[i];
    const double x = wx + a * u[i];
    d[i] = std::sqrt(x * x + wy * wy + wz * wz);
  }
}

}  // namespace

RadialPath sample_bessel_radial(double gamma,
                                std::pair<double, double> area_window,
                                const CylinderGrid& grid, std::uint64_t seed) {
  if (!(gamma > std::sqrt(2.0)) || !(gamma < 2.0)) {
    throw ParameterError(
        "excursion radial path needs gamma in (sqrt(2), 2); use the "
        "limiting-procedure sampler below that");
  }
  if (!(area_window.first > 0.0) || !(area_window.second > area_window.first)) {
    throw ParameterError("area window must satisfy 0 < lo < hi");
  }
  const double Q = 2.0 / gamma + gamma / 2.0;
  const double a = Q - gamma;

  Rng rng(seed);
  // Level of the maximum: density e^{-2 a M} dM restricted to the range the
  // area window can reach (slack in log-mass units).
  const double slack = 3.0;
  const double m_lo = std::log(area_window.first) / gamma - slack;
  const double m_hi = std::log(area_window.second) / gamma + slack;
  const double beta = 2.0 * a;
  const double e_lo = std::exp(-beta * m_lo), e_hi = std::exp(-beta * m_hi);
  const double max_level =
      -std::log(e_lo - rng.uniform() * (e_lo - e_hi)) / beta;

  RadialPath path;
  path.t.resize(grid.n_t());
  path.X.resize(grid.n_t());
  for (int it = 0; it < grid.n_t(); ++it) path.t[it] = grid.t_center(it);

  // split rows into the two sides of t = 0
  int first_pos = grid.n_t();
  for (int it = 0; it < grid.n_t(); ++it) {
    if (path.t[it] > 0.0) {
      first_pos = it;
      break;
    }
  }
  std::vector<double> u, d;
  u.reserve(grid.n_t());
  for (int it = first_pos; it < grid.n_t(); ++it) u.push_back(path.t[it]);
  sample_descent(rng, a, u, d);
  for (int it = first_pos; it < grid.n_t(); ++it) {
    path.X[it] = max_level - d[it - first_pos];
  }
  u.clear();
  for (int it = first_pos - 1; it >= 0; --it) u.push_back(-path.t[it]);
  sample_descent(rng, a, u, d);
  for (int it = first_pos - 1; it >= 0; --it) {
    path.X[it] = max_level - d[first_pos - 1 - it];
  }
  path.maximum_index = static_cast<int>(
      std::max_element(path.X.begin(), path.X.end()) - path.X.begin());
  return path;
}

namespace {

int row_nearest_zero(const CylinderGrid& grid) {
  int best = 0;
  double dist = std::abs(grid.t_center(0));
  for (int it = 1; it < grid.n_t(); ++it) {
    const double d = std::abs(grid.t_center(it));
    if (d < dist) {
      dist = d;
      best = it;
    }
  }
  return best;
}

}  // namespace

SphereSample sample_limiting_sphere(double gamma, double C, double delta,
                                    const CylinderGrid& grid,
                                    std::uint64_t seed,
                                    const RejectionOptions& opts) {
  if (!(gamma > 0.0) || !(gamma < 2.0)) {
    throw ParameterError("gamma must lie in (0, 2)");
  }
  if (!(C > 0.0) || !(delta > 0.0)) {
    throw ParameterError("need C > 0 and delta > 0");
  }
  const double Q = 2.0 / gamma + gamma / 2.0;
  const double drift = Q - gamma;
  const double lo = std::exp(-gamma * delta), hi = std::exp(gamma * delta);

  // Sampling happens on the disk's own half-cylinder [0, T_big]; T_big leaves
  // room for the maximum (near C/(Q-gamma)) plus the output window.
  const double t_out_span = std::max(std::abs(grid.t_min()), grid.t_max());
  const double t_big_raw = t_out_span + C / drift + 8.0;
  const int n_t_big = static_cast<int>(std::ceil(t_big_raw / grid.dt()));
  const CylinderGrid work(0.0, n_t_big * grid.dt(), n_t_big, grid.n_theta());
  const ChaosCalibration cal = ChaosCalibration::for_cylinder(work);

  SingularPart sing;
  sing.cylinder_drift = -drift;  // gamma t - Q t from the chart change
  sing.constant = -C;

  SphereSample out;
  out.seed = seed;
  out.embedding = Embedding::kMaxima;
  out.singular = SingularPart{};

  for (long attempt = 0; attempt < opts.max_attempts; ++attempt) {
    const std::uint64_t aseed = derive_stream_seed(seed, "ls-attempt", attempt);
    const auto radial =
        sample_radial_brownian_dirichlet(work, derive_stream_seed(aseed, "radial"));
    Field angular =
        sample_angular_gff_dirichlet(work, derive_stream_seed(aseed, "angular"));
    Field gauss = assemble_cylinder_field(work, radial, angular);
    const Measure mu = gmc_measure(gauss, gamma, sing, cal);
    if (!(mu.total >= lo && mu.total <= hi)) continue;

    out.attempts = attempt + 1;
    out.pre_total = mu.total;

    // radial part of the full field, maximum row
    int it_max = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < work.n_t(); ++it) {
      const double x = radial[it] - drift * work.t_center(it) - C;
      if (x > best) {
        best = x;
        it_max = it;
      }
    }
    const int j0 = row_nearest_zero(grid);
    const int shift = it_max - j0;

    out.field.geometry = grid;
    out.field.pinning = Pinning::kModuloConstant;
    out.field.values.assign(grid.num_cells(), 0.0);
    out.measure.geometry = grid;
    out.measure.cell_mass.assign(grid.num_cells(), 0.0);
    double kept = 0.0;
    for (int jt = 0; jt < grid.n_t(); ++jt) {
      const int it = jt + shift;
      if (it < 0 || it >= work.n_t()) continue;
      for (int ith = 0; ith < grid.n_theta(); ++ith) {
        const double det = -drift * work.t_center(it) - C;
        out.field.values[grid.index(jt, ith)] =
            gauss.values[work.index(it, ith)] + det;
        const double m = mu.cell_mass[work.index(it, ith)];
        out.measure.cell_mass[grid.index(jt, ith)] = m;
        kept += m;
      }
    }
    out.clipped_mass = 1.0 - kept / mu.total;
    out.measure.recompute_total();
    out.measure = normalize(out.measure);
    return out;
  }
  throw BudgetError("limiting-procedure sampler exhausted its attempt budget "
                    "without an accepted surface",
                    1.0 / static_cast<double>(opts.max_attempts));
}

SphereSample three_point_single(double gamma, double C, double delta,
                                const CylinderGrid& grid, std::uint64_t seed,
                                const RejectionOptions& opts) {
  SphereSample two = sample_limiting_sphere(gamma, C, delta, grid, seed, opts);
  const QuantumPoint qp =
      sample_quantum_point(two.measure, derive_stream_seed(seed, "third-point"));
  const int it_w = static_cast<int>(qp.cell) / grid.n_theta();
  const int ith_w = static_cast<int>(qp.cell) % grid.n_theta();
  const int j0 = row_nearest_zero(grid);

  // translation + rotation by whole cells: the third point's cell lands on
  // the cell containing (t, theta) = (0+, 0+); cell masses are permuted, not
  // resampled, so the multiset survives up to window clipping.
  const int dt_cells = it_w - j0;
  const int dth_cells = ith_w;

  SphereSample out;
  out.seed = seed;
  out.embedding = Embedding::kMobius01Inf;
  out.pre_total = two.pre_total;
  out.attempts = two.attempts;
  out.measure.geometry = grid;
  out.measure.cell_mass.assign(grid.num_cells(), 0.0);
  out.field.geometry = grid;
  out.field.pinning = Pinning::kModuloConstant;
  out.field.values.assign(grid.num_cells(), 0.0);
  double kept = 0.0;
  for (int jt = 0; jt < grid.n_t(); ++jt) {
    const int it = jt + dt_cells;
    if (it < 0 || it >= grid.n_t()) continue;
    for (int jth = 0; jth < grid.n_theta(); ++jth) {
      const int ith = (jth + dth_cells) % grid.n_theta();
      out.measure.cell_mass[grid.index(jt, jth)] =
          two.measure.cell_mass[grid.index(it, ith)];
      out.field.values[grid.index(jt, jth)] =
          two.field.values[grid.index(it, ith)];
      kept += out.measure.cell_mass[grid.index(jt, jth)];
    }
  }
  out.clipped_mass = two.clipped_mass + (1.0 - kept);
  out.measure.recompute_total();
  out.measure = normalize(out.measure);
  const double t_w = grid.t_center(it_w) + (qp.frac_a - 0.5) * grid.dt();
  const double th_w = grid.theta_center(ith_w) + (qp.frac_b - 0.5) * grid.dtheta();
  out.third_point = {t_w - dt_cells * grid.dt(),
                     th_w - dth_cells * grid.dtheta()};
  return out;
}

QuantumPoint sample_quantum_point(const Measure& measure, std::uint64_t seed) {
  if (!(measure.total > 0.0)) {
    throw NumericError("cannot sample a point from a zero measure");
  }
  Rng rng(seed);
  const double target = rng.uniform() * measure.total;
  double acc = 0.0;
  std::size_t cell = measure.cell_mass.size() - 1;
  for (std::size_t i = 0; i < measure.cell_mass.size(); ++i) {
    acc += measure.cell_mass[i];
    if (acc >= target && measure.cell_mass[i] > 0.0) {
      cell = i;
      break;
    }
  }
  QuantumPoint p;
  p.cell = cell;
  p.frac_a = rng.uniform();
  p.frac_b = rng.uniform();
  return p;
}

Ensemble three_point_sample(double gamma, double C, double delta,
                            const CylinderGrid& grid, int n,
                            std::uint64_t root_seed, const ProbeSet& probes,
                            const RejectionOptions& opts) {
  Ensemble ens;
  ens.probe_names = probes.names();
  ens.probe_fingerprint = probes.fingerprint();
  ens.root_seed = root_seed;
  ens.label = "three-point-surface";
  ens.samples.resize(n);
  std::vector<long> attempts(n, 0);
  std::vector<double> clipped(n, 0.0);

  parallel_for(n, opts.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_stream_seed(root_seed, "three-point", i);
    SphereSample sample = three_point_single(gamma, C, delta, grid, seed, opts);
    EnsembleSample& s = ens.samples[i];
    s.seed = seed;
    s.weight = 1.0;
    s.pre_total = sample.pre_total;
    s.field_shift = -std::log(sample.pre_total) / gamma;
    s.observables = probes.observe(sample.measure);
    attempts[i] = sample.attempts;
    clipped[i] = sample.clipped_mass;
  });

  long total_attempts = 0;
  double total_clip = 0.0;
  for (int i = 0; i < n; ++i) {
    total_attempts += attempts[i];
    total_clip += clipped[i];
  }
  ens.acceptance_rate = static_cast<double>(n) / total_attempts;
  ens.discarded_tail_mass = total_clip / n;
  return ens;
}

HittingTimeReport hitting_time_selftest(double a, double level, int n,
                                        std::uint64_t seed, double dt) {
  if (!(a > 0.0) || !(level > 0.0)) {
    throw ParameterError("hitting-time test needs a > 0 and A > 0");
  }
  if (n < 100) throw ParameterError("hitting-time test needs n >= 100");
  HittingTimeReport rep;
  rep.a = a;
  rep.level = level;
  rep.n = n;
  rep.dt = dt;
  rep.expected_mean = level / a;
  rep.var_standard = level / (a * a * a);
  rep.var_alternative = a * level;

  const double t_cap = 100.0 * level / a;
  const double sd = std::sqrt(dt);
  std::vector<double> times(n);
  for (int i = 0; i < n; ++i) {
    Rng rng(derive_stream_seed(seed, "hitting", i));
    double x = 0.0, t = 0.0;
    while (x < level && t < t_cap) {
      x += a * dt + sd * rng.normal();
      t += dt;
    }
    times[i] = t;
  }
  double mean = 0.0;
  for (double t : times) mean += t;
  mean /= n;
  double var = 0.0;
  for (double t : times) var += (t - mean) * (t - mean);
  var /= (n - 1);
  rep.empirical_mean = mean;
  rep.empirical_var = var;
  const double mu = level / a;
  const double lambda = level * level;
  rep.ks_distance = ks_distance_to_cdf(
      times, [&](double x) { return inverse_gaussian_cdf(x, mu, lambda); });
  return rep;
}

}  // namespace lqg
