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

#ifndef LQG_ENSEMBLE_HPP
#define LQG_ENSEMBLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lqg/stats.hpp"

namespace lqg {

/// One draw from a sampler pipeline: observables of the normalized measure,
/// the importance weight mu(C)^{-s/gamma}, and the field shift
/// -log(mu(C))/gamma. The measure itself is serialized separately when
/// snapshots are requested.
struct EnsembleSample {
  std::uint64_t seed = 0;
  double weight = 1.0;
  double pre_total = 0.0;    // mass before normalization
  double field_shift = 0.0;  // -(1/gamma) log pre_total
  std::vector<double> observables;
};

/// Weighted collection of observable vectors from one sampler pipeline.
/// Append-only while a run fills it, immutable afterwards.
struct Ensemble {
  std::vector<EnsembleSample> samples;
  std::vector<std::string> probe_names;
  std::uint64_t config_fingerprint = 0;
  std::uint64_t probe_fingerprint = 0;
  std::uint64_t grid_fingerprint = 0;
  std::uint64_t root_seed = 0;
  double discarded_tail_mass = 0.0;  // mean clipped/out-of-window fraction
  double acceptance_rate = 1.0;
  bool ess_warning = false;
  std::string label;

  std::vector<double> weights() const;
  std::vector<double> self_normalized_weights() const;
  double ess() const;
  ComparisonInput comparison_input() const;

  /// One row per sample: seed, weight, field_shift, observables. Byte-stable
  /// for identical runs.
  void write_csv(const std::string& path) const;

  /// JSON manifest: configuration fingerprints, probe definitions, seeds,
  /// acceptance diagnostics, discarded tail mass.
  void write_manifest(const std::string& path,
                      const std::string& extra_json = "{}") const;

  static Ensemble read_csv(const std::string& csv_path,
                           const std::string& manifest_path);
};

}  // namespace lqg

#endif  // LQG_ENSEMBLE_HPP
