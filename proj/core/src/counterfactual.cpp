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

#include "causabound/counterfactual.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "causabound/chain.hpp"

namespace causabound {

namespace {

const char* kCellNames[4] = {"Pr(Y0=0,Y1=0)", "Pr(Y0=0,Y1=1)", "Pr(Y0=1,Y1=0)",
                             "Pr(Y0=1,Y1=1)"};

std::array<double, 4> raw_cells(const TransitionMatrix& law, double xi) {
  const double tau = law.tau();
  const double rho = law.rho();
  return {0.5 * (1.0 - rho - xi), 0.5 * (xi + tau), 0.5 * (xi - tau), 0.5 * (1.0 + rho - xi)};
}

}  // namespace

Interval xi_bounds(const TransitionMatrix& law) {
  return {std::fabs(law.tau()), 1.0 - std::fabs(law.rho())};
}

Interval xi_bounds_decomposed(const Decomposition& chain) {
  return {std::fabs(chain.composed().tau()), chain.slack_cap()};
}

PotentialOutcomeTable table_at(const TransitionMatrix& law, double xi) {
  std::array<double, 4> cells = raw_cells(law, xi);
  const auto worst = std::min_element(cells.begin(), cells.end());
  if (!std::isfinite(xi) || *worst < -0.5 * kTolerance) {
    std::ostringstream os;
    const Interval range = xi_bounds(law);
    os << "slack xi=" << xi << " outside [" << range.lo << ", " << range.hi << "]: "
       << kCellNames[worst - cells.begin()] << " = " << *worst << " < 0";
    fail(ErrorKind::infeasible_slack, os.str());
  }
  for (double& c : cells) c = std::max(c, 0.0);
  return {law, xi, cells};
}

double pc_at(const TransitionMatrix& law, double xi, int x, int y) {
  const PotentialOutcomeTable table = table_at(law, xi);
  const double denominator = law.entry(x, y);
  if (denominator <= kTolerance) {
    std::ostringstream os;
    os << "Pr(Y=" << y << " | X<-" << x << ") = 0; cannot condition on X=" << x << ", Y=" << y;
    fail(ErrorKind::null_event, os.str());
  }
  // C_xy has probability (xi + tau)/2 when x == y, (xi - tau)/2 otherwise;
  // those are the (0,1) and (1,0) cells respectively.
  const double numerator = x == y ? table.cell(0, 1) : table.cell(1, 0);
  return std::clamp(numerator / denominator, 0.0, 1.0);
}

ResponseDistribution response_distribution(const TransitionMatrix& law, double xi) {
  const PotentialOutcomeTable table = table_at(law, xi);
  return {table.cell(0, 0), table.cell(1, 1), table.cell(0, 1), table.cell(1, 0)};
}

}  // namespace causabound
