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

#include "lqg/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lqg {

const char* to_string(BoundStatus s) noexcept {
  switch (s) {
    case BoundStatus::kClassicSeiberg: return "classic-Seiberg";
    case BoundStatus::kExtendedOnly: return "extended-only";
    case BoundStatus::kViolated: return "violated";
  }
  return "?";
}

double LqgParams::moment_threshold() const {
  double thr = 4.0 / (gamma * gamma);
  for (const auto& ins : insertions) {
    thr = std::min(thr, (2.0 / gamma) * (Q - ins.alpha));
  }
  return thr;
}

LqgParams derive_params(double gamma, std::vector<Insertion> insertions) {
  if (!(gamma > 0.0) || !(gamma < 2.0)) {
    throw ParameterError("gamma must lie in (0, 2)");
  }
  int at_inf = 0;
  for (const auto& ins : insertions) at_inf += ins.at_infinity ? 1 : 0;
  if (at_inf > 1) {
    throw ConfigError("at most one insertion may sit at infinity");
  }
  LqgParams p;
  p.gamma = gamma;
  p.Q = 2.0 / gamma + gamma / 2.0;
  double sum = 0.0;
  for (const auto& ins : insertions) sum += ins.alpha;
  p.s = sum - 2.0 * p.Q;
  p.a = (2.0 * p.Q - 3.0 * gamma) / gamma;
  p.delta_bessel = 4.0 - 8.0 / (gamma * gamma);
  p.insertions = std::move(insertions);
  p.bound_status = check_bounds(p).status;
  return p;
}

BoundCheck check_bounds(const LqgParams& params) {
  BoundCheck c;
  c.sum_alpha = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  c.second_seiberg = true;
  for (const auto& ins : params.insertions) {
    c.sum_alpha += ins.alpha;
    min_gap = std::min(min_gap, params.Q - ins.alpha);
    if (!(ins.alpha < params.Q)) c.second_seiberg = false;
  }
  c.first_seiberg = c.sum_alpha > 2.0 * params.Q;
  c.lhs_extended = params.Q - c.sum_alpha / 2.0;
  c.rhs_extended = std::min(2.0 / params.gamma, min_gap);
  c.extended = c.lhs_extended < c.rhs_extended;

  if (c.second_seiberg && c.first_seiberg) {
    c.status = BoundStatus::kClassicSeiberg;
  } else if (c.second_seiberg && c.extended) {
    c.status = BoundStatus::kExtendedOnly;
  } else {
    c.status = BoundStatus::kViolated;
  }
  return c;
}

}  // namespace lqg
