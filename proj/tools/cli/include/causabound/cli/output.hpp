// Copyright 2026 The causabound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causabound/asymptotics.hpp"
#include "causabound/transition.hpp"

namespace causabound::cli {

/// Shortest-form decimal with `digits` significant digits; locale-free,
/// and -0 prints as 0.
std::string format_number(double value, int digits);

/// `n,uLB,uUB,oLB,oUB,mLB,mUB` for every row; absent mixed bounds are left
/// as empty fields.
std::string profile_csv(const std::vector<ProfileRow>& rows);

/// Blue unobserved, red observed-at-1, green alternating bands over n.
std::string profile_svg(const std::vector<ProfileRow>& rows, const std::string& title);

/// One point of the bound comparison. Empty optionals mark bounds that are not
/// defined at this (tau, rho).
struct ComparisonRow {
  double tau = 0.0;
  double rho = 0.0;
  Interval simple;
  std::optional<double> monotonic;
  std::optional<Interval> two_step;       // homogeneous, positive evidence
  std::optional<Interval> infinite_step;  // homogeneous limit, positive evidence
  std::optional<double> best_two_step;    // smallest achievable upper bound (identified)
  std::optional<double> covariate;        // unobserved binary covariate (identified)
};

ComparisonRow compare_at(const TransitionMatrix& law);

std::string comparison_csv(const std::vector<ComparisonRow>& rows);

/// One panel per distinct rho, tau on the horizontal axis.
std::string comparison_svg(const std::vector<ComparisonRow>& rows);

}  // namespace causabound::cli
