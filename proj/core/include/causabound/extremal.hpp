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

#include <array>
#include <optional>
#include <string_view>

#include "causabound/bounds.hpp"
#include "causabound/chain.hpp"

namespace causabound {

/// Two-step decompositions of a law P(tau, rho) that attain the extreme
/// bounds over all complete mediation processes.
enum class Construction {
  suff_then_nec,   // X=1 sufficient for M=1, M=1 necessary for Y=1
  max_oUB,         // largest upper bound under positive evidence (rho > 0)
  nec_then_suff,   // X=1 necessary for M=1, M=1 sufficient for Y=1
  max_mUB_nonpos,  // largest upper bound under mixed evidence, rho <= 0
  max_mUB_nonneg,  // largest upper bound under mixed evidence, rho >= 0
};

std::string_view to_string(Construction kind) noexcept;

/// Requires tau > 0 and |rho| < 1 - tau, plus the sign of rho noted per
/// kind. Both steps of suff_then_nec and nec_then_suff are degenerate.
Decomposition construct(Construction kind, const TransitionMatrix& law);

enum class Regime { unobserved, positive, mixed };
enum class Extremum { largest, smallest };
enum class Side { upper, lower };

std::string_view to_string(Regime r) noexcept;
std::string_view to_string(Extremum e) noexcept;
std::string_view to_string(Side s) noexcept;

struct ExtremalCell {
  double value = 0.0;
  Decomposition witness{{TransitionMatrix{}}};
  EvidencePattern pattern{{Mark::one, Mark::one}};
  /// Whether the witness pins the probability of causation to a point.
  bool identified = false;
};

/// Largest and smallest achievable upper and lower bounds, by evidence
/// regime, each with a witnessing decomposition and evidence pattern.
class ExtremalReport {
 public:
  const ExtremalCell& cell(Regime r, Extremum e, Side s) const {
    return cells_[index(r, e, s)];
  }
  ExtremalCell& cell(Regime r, Extremum e, Side s) { return cells_[index(r, e, s)]; }

 private:
  static constexpr std::size_t index(Regime r, Extremum e, Side s) {
    return static_cast<std::size_t>(r) * 4 + static_cast<std::size_t>(e) * 2 +
           static_cast<std::size_t>(s);
  }
  std::array<ExtremalCell, 12> cells_;
};

/// Closed forms for every cell, each re-derived from its witness through
/// evidence_bounds (to 1e-10) before being returned.
ExtremalReport extremal_table(const TransitionMatrix& law);

enum class MixedSearch { search, closed_form, min_path };

struct MixedWorstCase {
  EvidencePattern pattern{{Mark::one, Mark::one}};
  double value = 1.0;
};

/// Smallest upper bound over fully observed patterns with X = Y = 1 and at
/// least one mediator observed at 0, for a chain of identical steps.
///
///  - search: enumerates all 2^(n-1) - 1 patterns (n <= 24); ties go to
///    the lexicographically smallest pattern.
///  - closed_form: gamma^(n/2) (n even) or gamma^((n-1)/2) delta' (n odd)
///    with the alternating witness; requires gamma < delta'^2 or rho = 0.
///  - min_path: exact minimum via dynamic programming over the chain, any n.
MixedWorstCase worst_case_mixed(const Decomposition& chain, MixedSearch how);

/// As above for n copies of `step`, without materializing the chain.
MixedWorstCase worst_case_mixed(const TransitionMatrix& step, std::size_t n, MixedSearch how);

/// Per-step upper bound on PC for one observed transition a -> b.
double step_upper_bound(const TransitionMatrix& step, int a, int b);

}  // namespace causabound
