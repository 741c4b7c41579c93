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

#include "causabound/transition.hpp"

namespace causabound {

class Decomposition;

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v, double slack = kTolerance) const noexcept {
    return v >= lo - slack && v <= hi + slack;
  }
  double width() const noexcept { return hi - lo; }
};

/// Admissible slack for a single law: [|tau|, 1 - |rho|].
Interval xi_bounds(const TransitionMatrix& law);

/// Admissible slack once the law is known to factor through a chain:
/// [|tau|, prod_i (1 - |rho_i|)].
Interval xi_bounds_decomposed(const Decomposition& chain);

/// Joint distribution of the potential outcomes (Y0, Y1) for a law at a
/// given slack xi = Pr(Y0 != Y1).
class PotentialOutcomeTable {
 public:
  const TransitionMatrix& base() const noexcept { return base_; }
  double xi() const noexcept { return xi_; }

  /// Pr(Y0 = y0, Y1 = y1).
  double cell(int y0, int y1) const noexcept { return cells_[2 * y0 + y1]; }
  const std::array<double, 4>& cells() const noexcept { return cells_; }

 private:
  friend PotentialOutcomeTable table_at(const TransitionMatrix&, double);
  PotentialOutcomeTable(const TransitionMatrix& base, double xi, std::array<double, 4> cells)
      : base_(base), xi_(xi), cells_(cells) {}

  TransitionMatrix base_;
  double xi_;
  std::array<double, 4> cells_;
};

/// Throws ErrorKind::infeasible_slack naming the cell that goes negative.
PotentialOutcomeTable table_at(const TransitionMatrix& law, double xi);

/// Probability that X=x caused Y=y given both were observed, when the
/// potential-outcome slack is xi.
double pc_at(const TransitionMatrix& law, double xi, int x, int y);

/// Table cells read as the four deterministic response functions.
struct ResponseDistribution {
  double const0 = 0.0;    // Y0 = 0, Y1 = 0
  double const1 = 0.0;    // Y0 = 1, Y1 = 1
  double identity = 0.0;  // Y0 = 0, Y1 = 1
  double flip = 0.0;      // Y0 = 1, Y1 = 0
};

ResponseDistribution response_distribution(const TransitionMatrix& law, double xi);

}  // namespace causabound
