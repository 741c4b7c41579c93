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

#include "causabound/bounds.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace causabound {

namespace {

BoundsResult finish(double lo, double hi, BoundsMethod method) {
  lo = std::clamp(lo, 0.0, 1.0);
  hi = std::clamp(hi, 0.0, 1.0);
  if (hi < lo) {
    // Only reachable through rounding at identified points.
    assert(lo - hi < 1e-9);
    hi = lo;
  }
  return {lo, hi, hi - lo <= kTolerance, method};
}

double conditioning_mass(const TransitionMatrix& law, int x, int y, std::string_view where) {
  const double mass = law.entry(x, y);
  if (mass <= kTolerance) {
    std::ostringstream os;
    os << where << "Pr(" << y << " | do(" << x << ")) = 0 under (tau=" << law.tau()
       << ", rho=" << law.rho() << "); the observation " << x << " -> " << y
       << " is impossible";
    fail(ErrorKind::null_event, os.str());
  }
  return mass;
}

// Shared core: bounds for one stretch with law `law`, slack ceiling
// `slack_cap` and observed endpoints (x, y).
BoundsResult stretch_bounds(const TransitionMatrix& law, double slack_cap, int x, int y,
                            BoundsMethod method, std::string_view where = {}) {
  const double mass = conditioning_mass(law, x, y, where);
  const double signed_tau = x == y ? law.tau() : -law.tau();
  const double lo = std::max(0.0, signed_tau) / mass;
  const double hi = 0.5 * (slack_cap + signed_tau) / mass;
  return finish(lo, hi, method);
}

}  // namespace

std::string_view to_string(BoundsMethod method) noexcept {
  switch (method) {
    case BoundsMethod::simple: return "simple";
    case BoundsMethod::unobserved: return "unobserved";
    case BoundsMethod::evidence_product: return "evidence-product";
  }
  return "unknown";
}

double gamma_delta_upper_bound(const TransitionMatrix& law, int x, int y) {
  const DerivedMeasures m = measures(law);
  const bool nonneg = law.rho() >= 0.0;
  if (x == 0 && y == 0) return nonneg ? 1.0 : m.delta;
  if (x == 0 && y == 1) return nonneg ? m.gamma : 1.0;
  if (x == 1 && y == 0) return nonneg ? 1.0 : m.gamma;
  return nonneg ? m.delta : 1.0;
}

BoundsResult simple_bounds(const TransitionMatrix& law, int x, int y) {
  BoundsResult r =
      stretch_bounds(law, 1.0 - std::fabs(law.rho()), x, y, BoundsMethod::simple);
  assert(law.tau() < 0.0 || law.tau() >= 1.0 ||
         std::fabs(gamma_delta_upper_bound(law, x, y) - r.hi) < 1e-9);
  return r;
}

BoundsResult unobserved_bounds(const Decomposition& chain, int x, int y) {
  return stretch_bounds(chain.composed(), chain.slack_cap(), x, y, BoundsMethod::unobserved);
}

BoundsResult evidence_bounds(const Decomposition& chain, const EvidencePattern& evidence) {
  const std::vector<Segment> parts = segments(chain, evidence);
  if (parts.size() == 1) return unobserved_bounds(chain, evidence.x(), evidence.y());

  double lo = 1.0;
  double hi = 1.0;
  for (const Segment& seg : parts) {
    std::ostringstream where;
    where << "segment M" << seg.start_index << "=" << seg.start_value << " -> M"
          << seg.end_index << "=" << seg.end_value << ": ";
    const BoundsResult part = stretch_bounds(seg.composed(), seg.slack_cap(), seg.start_value,
                                             seg.end_value, BoundsMethod::unobserved,
                                             where.str());
    lo *= part.lo;
    hi *= part.hi;
  }
  return finish(lo, hi, BoundsMethod::evidence_product);
}

}  // namespace causabound
