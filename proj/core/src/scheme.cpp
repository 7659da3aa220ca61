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

#include "lqg/scheme.hpp"

#include <cmath>

#include "lqg/parallel.hpp"
#include "lqg/rng.hpp"

namespace lqg {

void SchemeConfig::validate() const {
  if (!(gamma > 0.0) || !(gamma < 2.0)) {
    throw ConfigError("scheme gamma must lie in (0, 2)");
  }
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw ConfigError("scheme epsilon must lie in (0, 1)");
  }
  if (!(delta > 0.0)) throw ConfigError("scheme delta must be positive");
  if (std::abs(z1) > 1.0 || std::abs(z2) > 1.0) {
    throw ConfigError("insertions must lie in the closed unit disk");
  }
  if (z1 == z2) throw ConfigError("insertions must be distinct");
}

SchemeSampler::SchemeSampler(const SchemeConfig& config) : config_(config) {
  config_.validate();
  params_ = derive_params(
      config.gamma,
      {Insertion::at(config.z1, config.gamma),
       Insertion::at(config.z2, config.gamma),
       Insertion::infinity(config.gamma)});
  gff_ = std::make_shared<DirichletGffSampler>(
      PlanarGrid(config.resolution, 1.0 / config.epsilon));
  cal_ = ChaosCalibration::for_planar(*gff_);

  // (2Q - 3 gamma) log(eps) - gamma log|z - z1| - gamma log|z - z2|
  singular_.constant =
      (2.0 * params_.Q - 3.0 * config.gamma) * std::log(config.epsilon);
  singular_.log_terms.push_back({config.z1, -config.gamma});
  singular_.log_terms.push_back({config.z2, -config.gamma});

  // dropped harmonic remainder: gamma sum_i |log(1 - eps |z_i|)|
  r_eps_bound_ =
      config.gamma * (-std::log1p(-config.epsilon * std::abs(config.z1)) -
                      std::log1p(-config.epsilon * std::abs(config.z2)));
}

const PlanarGrid& SchemeSampler::grid() const noexcept { return gff_->grid(); }

SchemeField SchemeSampler::field(std::uint64_t seed) const {
  SchemeField f;
  f.gaussian = gff_->sample(seed);
  f.singular = singular_;
  f.r_eps_bound = r_eps_bound_;
  return f;
}

EventFlags SchemeSampler::events(const SchemeField& f) const {
  EventFlags ev;
  const Measure mu = gmc_measure(f.gaussian, config_.gamma, f.singular, cal_);
  ev.total_mass = mu.total;
  const double lo = std::exp(-config_.gamma * config_.delta);
  const double hi = std::exp(config_.gamma * config_.delta);
  ev.e_flag = ev.total_mass >= lo && ev.total_mass <= hi;
  ev.circle_avg = circle_average(f.gaussian, Complex(0, 0), 1.0);
  const double log_eps = std::log(config_.epsilon);
  ev.tilde_a = ev.circle_avg + (2.0 * params_.Q - 3.0 * config_.gamma) * log_eps;
  ev.h_flag = ev.tilde_a >= -std::pow(std::abs(log_eps), 2.0 / 3.0);
  return ev;
}

Ensemble SchemeSampler::sample(int n, std::uint64_t root_seed,
                               const ProbeSet& probes,
                               long max_attempts_per_sample, int threads) const {
  Ensemble ens;
  ens.probe_names = probes.names();
  ens.probe_fingerprint = probes.fingerprint();
  ens.root_seed = root_seed;
  ens.label = config_.enforce_h_event ? "scheme-conditioned"
                                      : "scheme-conditioned-no-h";
  ens.samples.resize(n);
  std::vector<long> attempts(n, 0);

  const double lo = std::exp(-config_.gamma * config_.delta);
  const double hi = std::exp(config_.gamma * config_.delta);
  const double log_eps = std::log(config_.epsilon);
  const double shift = (2.0 * params_.Q - 3.0 * config_.gamma) * log_eps;
  const double h_threshold = -std::pow(std::abs(log_eps), 2.0 / 3.0);

  parallel_for(n, threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_stream_seed(root_seed, "scheme", i);
    for (long attempt = 0; attempt < max_attempts_per_sample; ++attempt) {
      const std::uint64_t aseed = derive_stream_seed(seed, "attempt", attempt);
      Field gauss = gff_->sample(aseed);
      if (config_.enforce_h_event) {
        // cheap test first: the circle average needs no chaos evaluation
        const double avg = circle_average(gauss, Complex(0, 0), 1.0);
        if (avg + shift < h_threshold) continue;
      }
      const Measure mu = gmc_measure(gauss, config_.gamma, singular_, cal_);
      if (!(mu.total >= lo && mu.total <= hi)) continue;

      EnsembleSample& s = ens.samples[i];
      s.seed = aseed;
      s.weight = 1.0;
      s.pre_total = mu.total;
      s.field_shift = -std::log(mu.total) / config_.gamma;
      s.observables = probes.observe(mu);
      attempts[i] = attempt + 1;
      return;
    }
    throw BudgetError("scheme sampler exhausted its attempt budget",
                      1.0 / static_cast<double>(max_attempts_per_sample));
  });

  long total_attempts = 0;
  for (long a : attempts) total_attempts += a;
  ens.acceptance_rate = static_cast<double>(n) / total_attempts;
  return ens;
}

namespace {

double z_value(const FubiniSpec& spec, double x) {
  switch (spec.z_kind) {
    case FubiniSpec::ZKind::kOne: return 1.0;
    case FubiniSpec::ZKind::kExpHalfX: return std::exp(std::min(x, 4.0) / 2.0);
    case FubiniSpec::ZKind::kAbsX: return std::abs(x);
  }
  return 1.0;
}

}  // namespace

FubiniReport fubini_selftest(const FubiniSpec& spec, double delta) {
  if (!(delta > 0.0)) throw ParameterError("delta must be positive");
  Rng rng(spec.seed);
  const int n = spec.samples;
  std::vector<double> xs(n), ys(n), zs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = spec.x_mean + spec.x_sd * (spec.x_sd > 0.0 ? rng.normal() : 0.0);
    ys[i] = spec.y_equals_x ? xs[i] : xs[i] + spec.y_noise_sd * rng.normal();
    zs[i] = z_value(spec, xs[i]);
  }

  // midpoint grid over [-B, B]; B is a multiple of delta so that the
  // deterministic-X breakpoints fall on cell edges
  double extent = delta + 1.0;
  for (int i = 0; i < n; ++i) {
    extent = std::max({extent, std::abs(xs[i]) + delta, std::abs(ys[i]) + delta});
  }
  const double b = delta * std::ceil(extent / delta + 1.0);
  const int per_delta = 512;
  const double dx = delta / per_delta;
  const auto nodes_total = static_cast<long>(std::llround(2.0 * b / dx));

  // number of midpoint nodes x_j = -B + (j + 1/2) dx inside [lo, hi]
  const auto nodes_in = [&](double lo, double hi) -> double {
    if (hi <= lo) return 0.0;
    const double jlo = (lo + b) / dx - 0.5;  // nodes with j > jlo
    const double jhi = (hi + b) / dx - 0.5;  // nodes with j < jhi
    long first = static_cast<long>(std::floor(jlo)) + 1;
    long last = static_cast<long>(std::ceil(jhi)) - 1;
    first = std::max(first, 0L);
    last = std::min(last, nodes_total - 1);
    return last >= first ? static_cast<double>(last - first + 1) : 0.0;
  };

  FubiniReport rep;
  double f1q = 0.0, f2q = 0.0, f1c = 0.0, f2c = 0.0;
  for (int i = 0; i < n; ++i) {
    // F1: indicator X in [-x-delta, delta-x]  <=>  x in [-X-delta, -X+delta]
    f1q += zs[i] * nodes_in(-xs[i] - delta, -xs[i] + delta) * dx;
    f1c += zs[i] * 2.0 * delta;
    // F2: X <= -x+delta and Y >= -x-delta  <=>  x in [-Y-delta, -X+delta]
    f2q += zs[i] * nodes_in(-ys[i] - delta, -xs[i] + delta) * dx;
    f2c += zs[i] * std::max(ys[i] - xs[i] + 2.0 * delta, 0.0);
  }
  rep.f1_quadrature = f1q / n;
  rep.f1_closed = f1c / n;
  rep.f2_quadrature = f2q / n;
  rep.f2_closed = f2c / n;
  return rep;
}

}  // namespace lqg
