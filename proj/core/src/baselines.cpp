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

#include "causabound/baselines.hpp"

#include <sstream>

#include "causabound/counterfactual.hpp"

namespace causabound {

namespace {

TransitionMatrix stratum(double tau, double rho, const char* which) {
  try {
    return TransitionMatrix(tau, rho);
  } catch (const Error& e) {
    std::ostringstream os;
    os << which << " is not a valid law: " << e.what();
    fail(ErrorKind::infeasible_construction, os.str());
  }
}

// Posterior mixture of per-stratum bounds given X = Y = 1.
BoundsResult mixed_bounds(const CovariateModel& m) {
  const double w1 = m.pi * m.p1.entry(1, 1);
  const double w0 = (1.0 - m.pi) * m.p0.entry(1, 1);
  const double total = w1 + w0;
  if (total <= kTolerance) fail(ErrorKind::null_event, "Pr(Y=1 | X<-1) = 0");
  BoundsResult out{0.0, 0.0, false, BoundsMethod::simple};
  for (const auto& [w, law] : {std::pair{w1, m.p1}, std::pair{w0, m.p0}}) {
    if (w <= kTolerance * total) continue;
    const BoundsResult b = simple_bounds(law, 1, 1);
    out.lo += w / total * b.lo;
    out.hi += w / total * b.hi;
  }
  out.identified = out.hi - out.lo <= kTolerance;
  return out;
}

}  // namespace

BoundsResult monotonicity_bound(const TransitionMatrix& law) {
  if (law.tau() < 0.0) fail(ErrorKind::precondition, "monotonicity requires tau >= 0");
  const double pc = pc_at(law, law.tau(), 1, 1);
  return {pc, pc, true, BoundsMethod::simple};
}

TransitionMatrix CovariateModel::mixture() const {
  return TransitionMatrix(pi * p1.tau() + (1.0 - pi) * p0.tau(),
                          pi * p1.rho() + (1.0 - pi) * p0.rho());
}

std::string_view to_string(CovariateKind kind) noexcept {
  switch (kind) {
    case CovariateKind::observed_identifies_one: return "observed_identifies_one";
    case CovariateKind::unobserved_extremal: return "unobserved_extremal";
  }
  return "unknown";
}

CovariateResult covariate_construction(const TransitionMatrix& law, CovariateKind kind) {
  const double tau = law.tau();
  const double rho = law.rho();
  if (!(tau > 0.0)) fail(ErrorKind::precondition, "covariate constructions require tau > 0");

  CovariateResult result;
  CovariateModel& m = result.model;
  if (kind == CovariateKind::observed_identifies_one) {
    // Both strata degenerate; in C = 1, X = 1 is necessary for Y = 1.
    m.pi = 0.5 * (1.0 + tau - rho);
    m.p1 = stratum(0.5 * (1.0 + tau + rho), 0.5 * (tau + rho - 1.0), "P1");
    m.p0 = stratum(0.5 * (tau + rho - 1.0), 0.5 * (1.0 + tau + rho), "P0");
    result.pc = simple_bounds(m.p1, 1, 1);
    return result;
  }

  const double pos = 1.0 + tau + rho;
  m.pi = 0.5 * pos;
  if (rho < 0.0) {
    // P0 = [[a, 1-a], [1, 0]]: tau0 = a - 1, rho0 = -a.
    const double a = -2.0 * rho / (1.0 - tau - rho);
    m.p1 = TransitionMatrix{};
    m.p0 = stratum(a - 1.0, -a, "P0");
  } else {
    m.p1 = stratum((1.0 + tau - rho) / pos, 2.0 * rho / pos, "P1");
    m.p0 = TransitionMatrix(-1.0, 0.0);
  }
  result.pc = mixed_bounds(m);
  return result;
}

}  // namespace causabound
