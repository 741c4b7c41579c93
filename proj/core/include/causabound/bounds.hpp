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

#include "causabound/chain.hpp"
#include "causabound/counterfactual.hpp"
#include "causabound/transition.hpp"

namespace causabound {

enum class BoundsMethod { simple, unobserved, evidence_product };

std::string_view to_string(BoundsMethod method) noexcept;

/// Sharp interval for a probability of causation. `identified` is set
/// when hi - lo <= kTolerance.
struct BoundsResult {
  double lo = 0.0;
  double hi = 1.0;
  bool identified = false;
  BoundsMethod method = BoundsMethod::simple;

  Interval interval() const noexcept { return {lo, hi}; }
};

/// Bounds on PC_xy from the X -> Y law alone. Throws
/// ErrorKind::null_event when Pr(Y=y | X<-x) = 0.
BoundsResult simple_bounds(const TransitionMatrix& law, int x, int y);

/// The simple upper bound written through gamma and delta (tau in [0, 1)).
/// Agrees with simple_bounds(law, x, y).hi wherever that conditioning
/// event has positive probability.
double gamma_delta_upper_bound(const TransitionMatrix& law, int x, int y);

/// Bounds on PC_xy when the law factors through the chain but no mediator
/// is observed. The lower bound equals the simple one; the upper bound
/// uses prod_i (1 - |rho_i|) in place of 1 - |rho|.
BoundsResult unobserved_bounds(const Decomposition& chain, int x, int y);

/// Bounds on the probability that X caused Y given the evidence pattern:
/// the product, over stretches between consecutive observed nodes, of the
/// unobserved-mediator bounds of each stretch.
BoundsResult evidence_bounds(const Decomposition& chain, const EvidencePattern& evidence);

}  // namespace causabound
