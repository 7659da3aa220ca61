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

#ifndef LQG_PARAMS_HPP
#define LQG_PARAMS_HPP

#include <vector>

#include "lqg/grids.hpp"

namespace lqg {

/// Marked point z with log-singularity weight alpha; at most one insertion
/// may sit at infinity.
struct Insertion {
  Complex z{0.0, 0.0};
  double alpha = 0.0;
  bool at_infinity = false;

  static Insertion at(Complex z, double alpha) { return {z, alpha, false}; }
  static Insertion infinity(double alpha) { return {{0, 0}, alpha, true}; }
};

enum class BoundStatus : std::uint8_t {
  kClassicSeiberg = 0,  // sum alpha_i > 2Q and every alpha_i < Q
  kExtendedOnly = 1,    // classic fails, the relaxed condition holds
  kViolated = 2,
};

const char* to_string(BoundStatus s) noexcept;

/// Per-condition detail backing a bound verdict.
struct BoundCheck {
  BoundStatus status = BoundStatus::kViolated;
  bool first_seiberg = false;   // sum alpha_i > 2Q
  bool second_seiberg = false;  // alpha_i < Q for all i
  bool extended = false;        // Q - sum/2 < (2/gamma) ^ min_i (Q - alpha_i)
  double sum_alpha = 0.0;
  double lhs_extended = 0.0;  // Q - sum/2
  double rhs_extended = 0.0;  // (2/gamma) ^ min_i(Q - alpha_i)
};

/// Coupling constant and everything derived from it.
struct LqgParams {
  double gamma = 0.0;
  double Q = 0.0;            // 2/gamma + gamma/2
  double s = 0.0;            // sum alpha_i - 2Q
  double a = 0.0;            // (2Q - 3 gamma) / gamma
  double delta_bessel = 0.0; // 4 - 8/gamma^2
  std::vector<Insertion> insertions;
  BoundStatus bound_status = BoundStatus::kViolated;

  /// Finiteness threshold for moments of the total mass:
  /// q < (4/gamma^2) ^ min_i (2/gamma)(Q - alpha_i).
  double moment_threshold() const;
};

/// gamma must lie in (0, 2); derived scalars and the bound verdict are
/// filled in.
LqgParams derive_params(double gamma, std::vector<Insertion> insertions);

/// Pure function of the params; kClassicSeiberg implies the extended
/// condition holds as well.
BoundCheck check_bounds(const LqgParams& params);

}  // namespace lqg

#endif  // LQG_PARAMS_HPP
