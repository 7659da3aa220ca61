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

#include "lqg/ensemble.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lqg/errors.hpp"

namespace lqg {

using nlohmann::json;

std::vector<double> Ensemble::weights() const {
  std::vector<double> w;
  w.reserve(samples.size());
  for (const auto& s : samples) w.push_back(s.weight);
  return w;
}

std::vector<double> Ensemble::self_normalized_weights() const {
  std::vector<double> w = weights();
  double tot = 0.0;
  for (double x : w) tot += x;
  if (!(tot > 0.0)) throw NumericError("ensemble weights do not sum positive");
  for (double& x : w) x /= tot;
  return w;
}

double Ensemble::ess() const {
  const auto w = weights();
  return effective_sample_size(w);
}

ComparisonInput Ensemble::comparison_input() const {
  ComparisonInput in;
  in.weights = weights();
  in.observables.reserve(samples.size());
  for (const auto& s : samples) in.observables.push_back(s.observables);
  return in;
}

namespace {
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

void Ensemble::write_csv(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  os << "seed,weight,field_shift";
  for (const auto& n : probe_names) os << "," << n;
  os << "\n";
  for (const auto& s : samples) {
    os << s.seed << "," << fmt(s.weight) << "," << fmt(s.field_shift);
    for (double o : s.observables) os << "," << fmt(o);
    os << "\n";
  }
  if (!os.good()) throw ConfigError("failed writing '" + path + "'");
}

void Ensemble::write_manifest(const std::string& path,
                              const std::string& extra_json) const {
  json j;
  j["label"] = label;
  j["samples"] = samples.size();
  j["root_seed"] = root_seed;
  j["config_fingerprint"] = config_fingerprint;
  j["probe_fingerprint"] = probe_fingerprint;
  j["grid_fingerprint"] = grid_fingerprint;
  j["probes"] = probe_names;
  j["ess"] = samples.empty() ? 0.0 : ess();
  j["ess_warning"] = ess_warning;
  j["acceptance_rate"] = acceptance_rate;
  j["discarded_tail_mass"] = discarded_tail_mass;
  j["extra"] = json::parse(extra_json);
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  os << j.dump(2) << "\n";
}

Ensemble Ensemble::read_csv(const std::string& csv_path,
                            const std::string& manifest_path) {
  Ensemble ens;
  {
    std::ifstream is(manifest_path);
    if (!is) throw ConfigError("cannot open manifest '" + manifest_path + "'");
    json j = json::parse(is);
    ens.label = j.value("label", "");
    ens.root_seed = j.value("root_seed", std::uint64_t{0});
    ens.config_fingerprint = j.value("config_fingerprint", std::uint64_t{0});
    ens.probe_fingerprint = j.value("probe_fingerprint", std::uint64_t{0});
    ens.grid_fingerprint = j.value("grid_fingerprint", std::uint64_t{0});
    ens.acceptance_rate = j.value("acceptance_rate", 1.0);
    ens.discarded_tail_mass = j.value("discarded_tail_mass", 0.0);
    ens.ess_warning = j.value("ess_warning", false);
    ens.probe_names = j.value("probes", std::vector<std::string>{});
  }
  std::ifstream is(csv_path);
  if (!is) throw ConfigError("cannot open ensemble '" + csv_path + "'");
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty ensemble CSV");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    EnsembleSample s;
    std::getline(ls, tok, ',');
    s.seed = std::strtoull(tok.c_str(), nullptr, 10);
    std::getline(ls, tok, ',');
    s.weight = std::strtod(tok.c_str(), nullptr);
    std::getline(ls, tok, ',');
    s.field_shift = std::strtod(tok.c_str(), nullptr);
    while (std::getline(ls, tok, ',')) {
      s.observables.push_back(std::strtod(tok.c_str(), nullptr));
    }
    ens.samples.push_back(std::move(s));
  }
  return ens;
}

}  // namespace lqg
