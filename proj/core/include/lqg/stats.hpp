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

#ifndef LQG_STATS_HPP
#define LQG_STATS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lqg {

/// (sum w)^2 / sum w^2.
double effective_sample_size(std::span<const double> weights);

/// Weighted two-sample Kolmogorov-Smirnov statistic: sup-distance between
/// the self-normalized weighted empirical CDFs.
double weighted_ks_statistic(std::span<const double> xa,
                             std::span<const double> wa,
                             std::span<const double> xb,
                             std::span<const double> wb);

/// Weighted energy-distance statistic between two samples of d-vectors
/// (rows of `a` and `b`, row-major, d columns each).
double weighted_energy_statistic(const std::vector<std::vector<double>>& a,
                                 std::span<const double> wa,
                                 const std::vector<std::vector<double>>& b,
                                 std::span<const double> wb);

/// One observable column from each side plus importance weights.
struct ComparisonInput {
  std::vector<std::vector<double>> observables;  // n x m
  std::vector<double> weights;                   // n
};

struct ProbeTestResult {
  std::string name;
  double ks = 0.0;
  double p_value = 1.0;
};

/// Two-sample comparison report: per-probe weighted KS tests plus an overall
/// energy-distance test, p-values by pooled weighted bootstrap.
struct ComparisonReport {
  std::vector<ProbeTestResult> per_probe;
  double energy = 0.0;
  double energy_p = 1.0;
  double ess_a = 0.0;
  double ess_b = 0.0;
  double alpha = 0.01;
  std::uint64_t fingerprint_a = 0;
  std::uint64_t fingerprint_b = 0;

  /// Overall verdict: the energy test and every per-probe KS test (at
  /// Bonferroni-adjusted level alpha / m) fail to reject.
  bool passed() const;
  /// Smallest p-value across all tests.
  double min_p() const;
};

struct TwoSampleOptions {
  double alpha = 0.01;
  int bootstrap_resamples = 1000;
  double ess_floor = 100.0;
  std::uint64_t seed = 7;
};

/// Weighted two-sample test between observable ensembles. Refuses (throws
/// ParameterError) when either side has effective sample size below the
/// floor; no silent p-values.
ComparisonReport weighted_two_sample_test(const ComparisonInput& a,
                                          const ComparisonInput& b,
                                          const std::vector<std::string>& probe_names,
                                          const TwoSampleOptions& opts = {});

/// Mean with delete-1 jackknife standard error.
struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};
MeanEstimate jackknife_mean(std::span<const double> values);

/// Kolmogorov-Smirnov distance between a sample and a reference CDF.
double ks_distance_to_cdf(std::vector<double> sample,
                          const std::function<double(double)>& cdf);

/// Inverse-Gaussian CDF with mean mu and shape lambda.
double inverse_gaussian_cdf(double x, double mu, double lambda);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace lqg

#endif  // LQG_STATS_HPP
