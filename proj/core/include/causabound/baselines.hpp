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

#include <string_view>

#include "causabound/bounds.hpp"
#include "causabound/transition.hpp"

namespace causabound {

/// Under monotonicity (no prevention) the slack sits at xi = tau and PC is
/// identified at the simple lower bound. Requires tau >= 0.
BoundsResult monotonicity_bound(const TransitionMatrix& law);

/// A binary covariate C with Pr(C=1) = pi and per-stratum laws P0, P1 whose
/// mixture pi P1 + (1 - pi) P0 reproduces the target law.
struct CovariateModel {
  double pi = 0.0;
  TransitionMatrix p0;
  TransitionMatrix p1;

  TransitionMatrix mixture() const;
};

enum class CovariateKind {
  observed_identifies_one,  // seeing C = 1 pins PC at 1
  unobserved_extremal,      // C unseen, yet PC lands on the simple upper bound
};

std::string_view to_string(CovariateKind kind) noexcept;

struct CovariateResult {
  CovariateModel model;
  /// observed kind: PC given X = Y = 1 and C = 1; unobserved kind: PC given
  /// X = Y = 1, mixing the strata by their posterior weights.
  BoundsResult pc;
};

/// Requires tau > 0. Throws ErrorKind::infeasible_construction when a
/// stratum law would leave the valid region.
CovariateResult covariate_construction(const TransitionMatrix& law, CovariateKind kind);

}  // namespace causabound
