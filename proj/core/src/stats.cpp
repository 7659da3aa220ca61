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

#include "lqg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lqg/errors.hpp"
#include "lqg/rng.hpp"

namespace lqg {

double effective_sample_size(std::span<const double> weights) {
  double sum = 0.0, sum2 = 0.0;
  for (double w : weights) {
    sum += w;
    sum2 += w * w;
  }
  if (sum2 == 0.0) return 0.0;
  return sum * sum / sum2;
}

double weighted_ks_statistic(std::span<const double> xa,
                             std::span<const double> wa,
                             std::span<const double> xb,
                             std::span<const double> wb) {
  const double wa_tot = std::accumulate(wa.begin(), wa.end(), 0.0);
  const double wb_tot = std::accumulate(wb.begin(), wb.end(), 0.0);
  if (!(wa_tot > 0.0) || !(wb_tot > 0.0)) {
    throw ParameterError("weighted KS needs positive total weight");
  }
  std::vector<std::size_t> ia(xa.size()), ib(xb.size());
  std::iota(ia.begin(), ia.end(), 0);
  std::iota(ib.begin(), ib.end(), 0);
  std::sort(ia.begin(), ia.end(), [&](auto i, auto j) { return xa[i] < xa[j]; });
  std::sort(ib.begin(), ib.end(), [&](auto i, auto j) { return xb[i] < xb[j]; });

  double fa = 0.0, fb = 0.0, d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ia.size() || j < ib.size()) {
    const double va = i < ia.size() ? xa[ia[i]]
                                    : std::numeric_limits<double>::infinity();
    const double vb = j < ib.size() ? xb[ib[j]]
                                    : std::numeric_limits<double>::infinity();
    const double v = std::min(va, vb);
    while (i < ia.size() && xa[ia[i]] == v) fa += wa[ia[i++]] / wa_tot;
    while (j < ib.size() && xb[ib[j]] == v) fb += wb[ib[j++]] / wb_tot;
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

namespace {

double euclid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - y[k];
    s += d * d;
  }
  return std::sqrt(s);
}

double mean_cross_distance(const std::vector<std::vector<double>>& a,
                           std::span<const double> wa,
                           const std::vector<std::vector<double>>& b,
                           std::span<const double> wb) {
  double acc = 0.0, wtot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double w = wa[i] * wb[j];
      acc += w * euclid(a[i], b[j]);
      wtot += w;
    }
  }
  return acc / wtot;
}

}  // namespace

double weighted_energy_statistic(const std::vector<std::vector<double>>& a,
                                 std::span<const double> wa,
                                 const std::vector<std::vector<double>>& b,
                                 std::span<const double> wb) {
  return 2.0 * mean_cross_distance(a, wa, b, wb) -
         mean_cross_distance(a, wa, a, wa) - mean_cross_distance(b, wb, b, wb);
}

bool ComparisonReport::passed() const {
  if (energy_p <= alpha) return false;
  const double level = per_probe.empty() ? alpha : alpha / per_probe.size();
  for (const auto& p : per_probe) {
    if (p.p_value <= level) return false;
  }
  return true;
}

double ComparisonReport::min_p() const {
  double p = energy_p;
  for (const auto& r : per_probe) p = std::min(p, r.p_value);
  return p;
}

ComparisonReport weighted_two_sample_test(
    const ComparisonInput& a, const ComparisonInput& b,
    const std::vector<std::string>& probe_names, const TwoSampleOptions& opts) {
  const std::size_t na = a.observables.size(), nb = b.observables.size();
  if (na == 0 || nb == 0 || a.weights.size() != na || b.weights.size() != nb) {
    throw ParameterError("two-sample test needs nonempty weighted ensembles");
  }
  const std::size_t m = a.observables.front().size();
  if (m == 0 || b.observables.front().size() != m || probe_names.size() != m) {
    throw ParameterError("observable dimensions disagree");
  }

  ComparisonReport rep;
  rep.alpha = opts.alpha;
  rep.ess_a = effective_sample_size(a.weights);
  rep.ess_b = effective_sample_size(b.weights);
  if (rep.ess_a < opts.ess_floor || rep.ess_b < opts.ess_floor) {
    throw ParameterError("effective sample size below the floor; refusing to "
                         "produce a p-value");
  }

  auto column = [m](const std::vector<std::vector<double>>& rows, std::size_t k) {
    std::vector<double> col(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) col[i] = rows[i][k];
    (void)m;
    return col;
  };

  std::vector<double> ks_obs(m);
  for (std::size_t k = 0; k < m; ++k) {
    ks_obs[k] = weighted_ks_statistic(column(a.observables, k), a.weights,
                                      column(b.observables, k), b.weights);
  }
  rep.energy = weighted_energy_statistic(a.observables, a.weights,
                                         b.observables, b.weights);

  // Pooled-atom bootstrap of the null: under equality in law the (value,
  // weight) atoms are exchangeable between the sides, so resampled sides of
  // the original sizes approximate the null distribution of each statistic.
  Rng rng(opts.seed);
  std::vector<std::size_t> ks_ge(m, 0);
  std::size_t energy_ge = 0;
  const std::size_t pool = na + nb;
  auto atom_obs = [&](std::size_t idx) -> const std::vector<double>& {
    return idx < na ? a.observables[idx] : b.observables[idx - na];
  };
  auto atom_w = [&](std::size_t idx) {
    return idx < na ? a.weights[idx] : b.weights[idx - na];
  };
  std::vector<std::vector<double>> ra(na), rb(nb);
  std::vector<double> rwa(na), rwb(nb);
  for (int bres = 0; bres < opts.bootstrap_resamples; ++bres) {
    for (std::size_t i = 0; i < na; ++i) {
      const std::size_t idx = rng.index(pool);
      ra[i] = atom_obs(idx);
      rwa[i] = atom_w(idx);
    }
    for (std::size_t j = 0; j < nb; ++j) {
      const std::size_t idx = rng.index(pool);
      rb[j] = atom_obs(idx);
      rwb[j] = atom_w(idx);
    }
    for (std::size_t k = 0; k < m; ++k) {
      const double ks = weighted_ks_statistic(column(ra, k), rwa,
                                              column(rb, k), rwb);
      if (ks >= ks_obs[k]) ++ks_ge[k];
    }
    if (weighted_energy_statistic(ra, rwa, rb, rwb) >= rep.energy) ++energy_ge;
  }

  rep.per_probe.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    rep.per_probe[k].name = probe_names[k];
    rep.per_probe[k].ks = ks_obs[k];
    rep.per_probe[k].p_value =
        (1.0 + ks_ge[k]) / (opts.bootstrap_resamples + 1.0);
  }
  rep.energy_p = (1.0 + energy_ge) / (opts.bootstrap_resamples + 1.0);
  return rep;
}

MeanEstimate jackknife_mean(std::span<const double> values) {
  MeanEstimate est;
  const std::size_t n = values.size();
  if (n < 2) throw ParameterError("jackknife needs at least two values");
  double sum = 0.0;
  for (double v : values) sum += v;
  est.mean = sum / n;
  double js = 0.0;
  for (double v : values) {
    const double loo = (sum - v) / (n - 1);
    js += (loo - est.mean) * (loo - est.mean);
  }
  est.std_error = std::sqrt(js * (n - 1.0) / n);
  return est;
}

double ks_distance_to_cdf(std::vector<double> sample,
                          const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::abs(f - i / n));
    d = std::max(d, std::abs((i + 1) / n - f));
  }
  return d;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double inverse_gaussian_cdf(double x, double mu, double lambda) {
  if (x <= 0.0) return 0.0;
  const double s = std::sqrt(lambda / x);
  const double term1 = normal_cdf(s * (x / mu - 1.0));
  // exp(2 lambda / mu) * Phi(-s (x/mu + 1)) through logs to dodge overflow
  const double z = s * (x / mu + 1.0);
  const double log_phi = std::log(0.5) + std::log(std::erfc(z / std::sqrt(2.0)));
  const double term2 = std::isfinite(log_phi)
                           ? std::exp(2.0 * lambda / mu + log_phi)
                           : 0.0;
  return term1 + term2;
}

}  // namespace lqg
