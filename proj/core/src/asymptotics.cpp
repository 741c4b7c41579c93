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

#include "causabound/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "causabound/bounds.hpp"
#include "causabound/chain.hpp"
#include "causabound/extremal.hpp"

namespace causabound {

namespace {

constexpr std::size_t kMaxSearchSteps = 24;

void require_open_unit_tau(const TransitionMatrix& law, const char* what) {
  if (!(law.tau() > 0.0 && law.tau() < 1.0)) {
    std::ostringstream os;
    os << what << " requires 0 < tau < 1, got tau=" << law.tau();
    fail(ErrorKind::unsupported, os.str());
  }
}

double worst_mixed_upper(const TransitionMatrix& step, std::int64_t n) {
  if (step.rho() == 0.0) return 1.0;
  const DerivedMeasures m = measures(step);
  const auto steps = static_cast<std::size_t>(n);
  if (m.gamma < m.delta * m.delta) {
    return worst_case_mixed(step, steps, MixedSearch::closed_form).value;
  }
  if (steps <= kMaxSearchSteps) {
    return worst_case_mixed(step, steps, MixedSearch::search).value;
  }
  return worst_case_mixed(step, steps, MixedSearch::min_path).value;
}

// Lower bound 2 tau_Q / (1 + tau_Q + rho_Q) of a stretch with law Q.
double stretch_lower(const TransitionMatrix& q) {
  return std::max(0.0, q.tau()) / q.entry(1, 1);
}

std::vector<std::int64_t> arg_max(const std::vector<PlanRow>& rows) {
  double best = -1.0;
  for (const auto& r : rows) best = std::max(best, r.lb_if_one);
  std::vector<std::int64_t> out;
  for (const auto& r : rows) {
    if (r.lb_if_one >= best - 1e-12 * best) out.push_back(r.k);
  }
  return out;
}

}  // namespace

ProfileRow profile(const TransitionMatrix& law, std::int64_t n) {
  require_open_unit_tau(law, "homogeneous profile");
  const TransitionMatrix step = homogeneous_step(law, n);
  const double tau = law.tau();
  const double rho = law.rho();
  const double denominator = 1.0 + tau + rho;
  const auto steps = static_cast<double>(n);

  // tau' - 1 and |rho'| without cancellation: rho' = -sigma (tau' - 1).
  const double step_tau_minus_one = std::expm1(std::log(tau) / steps);
  const double sigma = rho / (1.0 - tau);
  const double abs_step_rho = std::fabs(sigma) * -step_tau_minus_one;

  ProfileRow row;
  row.n = n;
  const double lower = 2.0 * tau / denominator;
  const double slack_cap = std::exp(steps * std::log1p(-abs_step_rho));
  row.unobserved = {lower, (tau + slack_cap) / denominator};

  // 2 / (1 + tau' + rho') = 1 / (1 + (tau' - 1)(1 - sigma) / 2)
  const double observed_lower =
      tau * std::exp(-steps * std::log1p(0.5 * step_tau_minus_one * (1.0 - sigma)));
  double observed_upper = 1.0;
  if (rho >= 0.0) {
    const double log_delta =
        std::log1p(-2.0 * abs_step_rho / (1.0 + step.tau() + abs_step_rho));
    observed_upper = std::exp(steps * log_delta);
  }
  row.observed = {observed_lower, observed_upper};

  if (n >= 2 && !law.is_degenerate()) {
    row.mixed = Interval{0.0, worst_mixed_upper(step, n)};
  }
  return row;
}

LimitReport limits(const TransitionMatrix& law) {
  require_open_unit_tau(law, "limit analysis");
  const double tau = law.tau();
  const double rho = law.rho();
  const double sigma = rho / (1.0 - tau);
  const double denominator = 1.0 + tau + rho;

  LimitReport report;
  report.degenerate = law.is_degenerate();
  report.unobserved = {2.0 * tau / denominator,
                       (tau + std::pow(tau, std::fabs(sigma))) / denominator};
  report.observed = {std::pow(tau, 0.5 * (1.0 + sigma)), std::min(1.0, std::pow(tau, sigma))};
  if (report.degenerate) {
    // The chain is irrelevant: every bound is the identified value.
    const double identified = rho > 0.0 ? tau : 1.0;
    report.unobserved = {identified, identified};
    report.observed = {identified, identified};
  } else {
    report.mixed = Interval{0.0, rho != 0.0 ? 0.0 : 1.0};
  }
  return report;
}

bool MonotonicityReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const MonotonicityCheck& c) { return c.skipped || c.passed; });
}

MonotonicityReport monotonicity_report(const TransitionMatrix& law, std::int64_t n_max) {
  require_open_unit_tau(law, "monotonicity report");
  if (n_max < 1) fail(ErrorKind::precondition, "monotonicity report needs n_max >= 1");
  MonotonicityReport report;
  if (law.is_degenerate()) {
    report.skipped = true;
    return report;
  }

  // Index n holds profile(n); 2 n_max for the doubling checks.
  std::vector<double> o_lo(2 * n_max + 1), o_hi(2 * n_max + 1), u_hi(2 * n_max + 1);
  for (std::int64_t n = 1; n <= 2 * n_max; ++n) {
    const ProfileRow r = profile(law, n);
    o_lo[n] = r.observed.lo;
    o_hi[n] = r.observed.hi;
    u_hi[n] = r.unobserved.hi;
  }

  const bool rho_positive = law.rho() > 0.0;
  const bool rho_null = law.rho() == 0.0;

  auto run = [&](std::string name, bool vacuous, auto&& holds, std::int64_t from,
                 std::int64_t to) {
    MonotonicityCheck c;
    c.name = std::move(name);
    c.skipped = vacuous;
    if (!vacuous) {
      for (std::int64_t n = from; n <= to; ++n) {
        if (!holds(n)) {
          c.passed = false;
          c.first_violation = n;
          break;
        }
      }
    }
    report.checks.push_back(std::move(c));
  };
  auto second_difference = [](const std::vector<double>& v, std::int64_t n) {
    return v[n + 1] - 2.0 * v[n] + v[n - 1];
  };
  auto tol = [](const std::vector<double>& v, std::int64_t n) {
    return 1e-12 * std::max({std::fabs(v[n - 1]), std::fabs(v[n]), std::fabs(v[n + 1])});
  };

  run("oLB increasing", false, [&](auto n) { return o_lo[n + 1] > o_lo[n]; }, 1, n_max - 1);
  run("oLB concave", false,
      [&](auto n) { return second_difference(o_lo, n) <= tol(o_lo, n); }, 2, n_max - 1);
  // For rho = 0 the unobserved upper bound is identically 1.
  run("uUB decreasing", rho_null, [&](auto n) { return u_hi[n + 1] < u_hi[n]; }, 1, n_max - 1);
  run("uUB convex", rho_null,
      [&](auto n) { return second_difference(u_hi, n) >= -tol(u_hi, n); }, 2, n_max - 1);
  run("oUB decreasing", !rho_positive, [&](auto n) { return o_hi[n + 1] < o_hi[n]; }, 1,
      n_max - 1);
  run("oUB convex", !rho_positive,
      [&](auto n) { return second_difference(o_hi, n) >= -tol(o_hi, n); }, 2, n_max - 1);
  run("uUB doubling", rho_null, [&](auto n) { return u_hi[2 * n] < u_hi[n]; }, 1, n_max);
  run("oLB doubling", false, [&](auto n) { return o_lo[2 * n] > o_lo[n]; }, 1, n_max);
  run("oUB doubling", !rho_positive, [&](auto n) { return o_hi[2 * n] < o_hi[n]; }, 1, n_max);
  return report;
}

PlanReport plan_single_observation(const TransitionMatrix& step, std::int64_t n) {
  if (n < 2) fail(ErrorKind::precondition, "planning needs at least one mediator (n >= 2)");
  const TransitionMatrix overall = power(step, n);
  if (overall.entry(1, 1) <= kTolerance) {
    fail(ErrorKind::null_event, "Pr(Y=1 | X<-1) = 0 for this chain");
  }
  PlanReport plan;
  plan.lb_without_observation = stretch_lower(overall);
  for (std::int64_t k = 1; k < n; ++k) {
    const TransitionMatrix head = power(step, k);
    const TransitionMatrix tail = power(step, n - k);
    PlanRow row;
    row.k = k;
    row.lb_if_one = stretch_lower(head) * stretch_lower(tail);
    row.posterior_one = head.entry(1, 1) * tail.entry(1, 1) / overall.entry(1, 1);
    row.expected_lb = row.posterior_one * row.lb_if_one;
    plan.rows.push_back(row);
  }
  plan.best_k = arg_max(plan.rows);
  return plan;
}

PlanReport plan_single_observation(const Decomposition& chain) {
  const std::size_t n = chain.size();
  if (n < 2) fail(ErrorKind::precondition, "planning needs at least one mediator (n >= 2)");
  const TransitionMatrix overall = chain.composed();
  PlanReport plan;
  plan.lb_without_observation = evidence_bounds(chain, EvidencePattern::endpoints_only(n, 1, 1)).lo;
  const std::vector<TransitionMatrix>& steps = chain.steps();
  for (std::size_t k = 1; k < n; ++k) {
    EvidencePattern evidence = EvidencePattern::endpoints_only(n, 1, 1);
    std::vector<Mark> marks = evidence.marks();
    marks[k] = Mark::one;
    const Decomposition head(std::vector<TransitionMatrix>(steps.begin(), steps.begin() + k));
    const Decomposition tail(std::vector<TransitionMatrix>(steps.begin() + k, steps.end()));
    PlanRow row;
    row.k = static_cast<std::int64_t>(k);
    row.posterior_one =
        head.composed().entry(1, 1) * tail.composed().entry(1, 1) / overall.entry(1, 1);
    row.lb_if_one = row.posterior_one > kTolerance
                        ? evidence_bounds(chain, EvidencePattern(std::move(marks))).lo
                        : 0.0;
    row.expected_lb = row.posterior_one * row.lb_if_one;
    plan.rows.push_back(row);
  }
  plan.best_k = arg_max(plan.rows);
  return plan;
}

}  // namespace causabound
