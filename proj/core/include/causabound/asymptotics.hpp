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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "causabound/counterfactual.hpp"
#include "causabound/transition.hpp"

namespace causabound {

class Decomposition;

/// Bounds for the homogeneous n-step decomposition of an overall law,
/// observing X = Y = 1 and
///   unobserved: no mediator,
///   observed:   every mediator at 1,
///   mixed:      the worst-case fully observed pattern with some 0
///               (absent for n = 1, where no mediator exists).
struct ProfileRow {
  std::int64_t n = 1;
  Interval unobserved;
  Interval observed;
  std::optional<Interval> mixed;
};

/// Requires 0 < tau < 1. All n-dependent powers are taken in log space.
ProfileRow profile(const TransitionMatrix& law, std::int64_t n);

/// n -> infinity limits of profile(). For a degenerate law every field is
/// the identified value and `mixed` is absent (mixed evidence has
/// probability zero).
struct LimitReport {
  Interval unobserved;
  Interval observed;
  std::optional<Interval> mixed;
  bool degenerate = false;
};

LimitReport limits(const TransitionMatrix& law);

struct MonotonicityCheck {
  std::string name;
  bool passed = true;
  bool skipped = false;  // hypothesis not met (vacuous)
  std::optional<std::int64_t> first_violation;
};

struct MonotonicityReport {
  bool skipped = false;  // degenerate law: bounds constant in n
  std::vector<MonotonicityCheck> checks;

  bool all_passed() const;
};

/// Numeric evidence for the shape of the homogeneous bounds in n:
/// observed lower bound increasing and concave, unobserved upper bound
/// (and, for rho > 0, observed upper bound) decreasing and convex, and the
/// doubling inequalities for n = 1..n_max. Violations are findings.
MonotonicityReport monotonicity_report(const TransitionMatrix& law, std::int64_t n_max);

struct PlanRow {
  std::int64_t k = 0;          // observed node index, 1..n-1
  double lb_if_one = 0.0;      // lower bound if M_k is found at 1
  double posterior_one = 0.0;  // Pr(M_k = 1 | X = 1, Y = 1)
  double expected_lb = 0.0;    // posterior * lb_if_one (0 otherwise)
};

struct PlanReport {
  double lb_without_observation = 0.0;
  std::vector<PlanRow> rows;
  std::vector<std::int64_t> best_k;  // one entry for even n, two for odd n
};

/// Which single mediator to observe in a homogeneous chain of n copies of
/// `step`, given X = Y = 1.
PlanReport plan_single_observation(const TransitionMatrix& step, std::int64_t n);

/// Same question for an arbitrary chain, evaluated through evidence_bounds.
PlanReport plan_single_observation(const Decomposition& chain);

}  // namespace causabound
