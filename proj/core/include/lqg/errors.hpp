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

#ifndef LQG_ERRORS_HPP
#define LQG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lqg {

/// Error taxonomy. The CLI maps these onto distinct exit codes.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sampler exhausted its attempt or acceptance budget. Carries diagnostics.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  /// Whatever quantity the budget was about (acceptance rate, tail mass, ...).
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace lqg

#endif  // LQG_ERRORS_HPP
