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

#include "causabound/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace causabound {

namespace {

constexpr std::size_t kMaxSearchSteps = 24;

void require_interior(const TransitionMatrix& law) {
  if (!(law.tau() > 0.0)) {
    fail(ErrorKind::precondition, "extremal constructions require tau > 0");
  }
  if (!(std::fabs(law.rho()) < 1.0 - law.tau())) {
    fail(ErrorKind::unsupported,
         "extremal constructions require a non-degenerate law (|rho| < 1 - tau)");
  }
}

// Relative slack used to treat two pattern products as tied.
bool strictly_better(double candidate, double incumbent) {
  if (!std::isfinite(incumbent)) return candidate < incumbent;
  return candidate < incumbent - 1e-12 * std::max(incumbent, 1e-300);
}

std::string alternating(std::size_t length) {
  std::string s(length, '1');
  for (std::size_t i = 1; i < length; i += 2) s[i] = '0';
  return s;
}

void check_mixed_inputs(const TransitionMatrix& step, std::size_t n) {
  if (!(step.tau() > 0.0 && step.tau() < 1.0)) {
    fail(ErrorKind::precondition, "worst_case_mixed requires 0 < tau' < 1");
  }
  if (n < 2) {
    fail(ErrorKind::precondition, "mixed evidence needs at least one mediator (n >= 2)");
  }
}

// factor[a][b]: per-step upper bound for a -> b, +inf if impossible.
using FactorTable = std::array<std::array<double, 2>, 2>;

FactorTable factor_table(const TransitionMatrix& step) {
  FactorTable t{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      t[a][b] = step.entry(a, b) > kTolerance ? step_upper_bound(step, a, b)
                                              : std::numeric_limits<double>::infinity();
    }
  }
  return t;
}

MixedWorstCase exhaustive(const TransitionMatrix& step, std::size_t n) {
  if (n > kMaxSearchSteps) {
    fail(ErrorKind::refused, "exhaustive mixed-evidence search is limited to n <= " +
                                 std::to_string(kMaxSearchSteps) + " (got n = " +
                                 std::to_string(n) + "); use the closed form");
  }
  const FactorTable f = factor_table(step);
  const std::size_t inner = n - 1;
  const std::uint64_t all_ones = (std::uint64_t{1} << inner) - 1;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  // Mask bit (inner-1-k) is node k+1, so numeric order is lexicographic order.
  for (std::uint64_t mask = 0; mask < all_ones; ++mask) {
    double product = 1.0;
    int prev = 1;
    for (std::size_t k = 0; k < inner; ++k) {
      const int bit = static_cast<int>((mask >> (inner - 1 - k)) & 1U);
      product *= f[prev][bit];
      prev = bit;
    }
    product *= f[prev][1];
    if (strictly_better(product, best)) {
      best = product;
      best_mask = mask;
    }
  }
  if (!std::isfinite(best)) {
    fail(ErrorKind::null_event, "no mixed evidence pattern has positive probability");
  }
  std::vector<Mark> marks(n + 1, Mark::one);
  for (std::size_t k = 0; k < inner; ++k) {
    if (((best_mask >> (inner - 1 - k)) & 1U) == 0) marks[k + 1] = Mark::zero;
  }
  return {EvidencePattern(std::move(marks)), best};
}

MixedWorstCase closed_form(const TransitionMatrix& step, std::size_t n) {
  const DerivedMeasures m = measures(step);
  const double gamma = m.gamma;
  const double delta = m.delta;
  const bool null_rho = step.rho() == 0.0;
  if (!null_rho && !(gamma < delta * delta)) {
    std::ostringstream os;
    os << "closed form needs gamma < delta'^2 (gamma=" << gamma << ", delta'=" << delta
       << "); n is too small, use search";
    fail(ErrorKind::precondition, os.str());
  }
  const double log_gamma = std::log(gamma);
  std::string witness;
  double value = 0.0;
  if (n % 2 == 0) {
    value = std::exp(0.5 * static_cast<double>(n) * log_gamma);
    witness = alternating(n + 1);
  } else {
    value = std::exp(0.5 * static_cast<double>(n - 1) * log_gamma) * delta;
    witness = step.rho() < 0.0 ? alternating(n - 2) + "001" : alternating(n) + "1";
  }
  if (null_rho) value = 1.0;
  return {EvidencePattern::parse(witness), value};
}

MixedWorstCase min_path(const TransitionMatrix& step, std::size_t n) {
  const FactorTable f = factor_table(step);
  struct State {
    double cost = std::numeric_limits<double>::infinity();
    std::string pattern;
  };
  auto better = [](const State& a, const State& b) {
    if (strictly_better(a.cost, b.cost)) return true;
    if (strictly_better(b.cost, a.cost)) return false;
    return a.pattern < b.pattern;
  };
  // state[value][seen_zero]
  std::array<std::array<State, 2>, 2> state{};
  state[1][0] = {1.0, "1"};
  for (std::size_t node = 1; node < n; ++node) {
    std::array<std::array<State, 2>, 2> next{};
    for (int a = 0; a < 2; ++a) {
      for (int seen = 0; seen < 2; ++seen) {
        const State& s = state[a][seen];
        if (!std::isfinite(s.cost)) continue;
        for (int b = 0; b < 2; ++b) {
          State cand{s.cost * f[a][b], s.pattern + static_cast<char>('0' + b)};
          State& slot = next[b][seen || b == 0];
          if (std::isfinite(cand.cost) && better(cand, slot)) slot = std::move(cand);
        }
      }
    }
    state = std::move(next);
  }
  State best;
  for (int a = 0; a < 2; ++a) {
    const State& s = state[a][1];
    if (!std::isfinite(s.cost)) continue;
    State cand{s.cost * f[a][1], s.pattern + '1'};
    if (std::isfinite(cand.cost) && better(cand, best)) best = std::move(cand);
  }
  if (!std::isfinite(best.cost)) {
    fail(ErrorKind::null_event, "no mixed evidence pattern has positive probability");
  }
  return {EvidencePattern::parse(best.pattern), best.cost};
}

}  // namespace

std::string_view to_string(Construction kind) noexcept {
  switch (kind) {
    case Construction::suff_then_nec: return "suff_then_nec";
    case Construction::max_oUB: return "max_oUB";
    case Construction::nec_then_suff: return "nec_then_suff";
    case Construction::max_mUB_nonpos: return "max_mUB_nonpos";
    case Construction::max_mUB_nonneg: return "max_mUB_nonneg";
  }
  return "unknown";
}

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::unobserved: return "unobserved";
    case Regime::positive: return "positive";
    case Regime::mixed: return "mixed";
  }
  return "unknown";
}

std::string_view to_string(Extremum e) noexcept {
  return e == Extremum::largest ? "largest" : "smallest";
}

std::string_view to_string(Side s) noexcept { return s == Side::upper ? "upper" : "lower"; }

Decomposition construct(Construction kind, const TransitionMatrix& law) {
  require_interior(law);
  const double tau = law.tau();
  const double rho = law.rho();
  const double pos = 1.0 + tau + rho;  // 2 Pr(Y=1 | X<-1)
  const double neg = 1.0 + tau - rho;  // 2 Pr(Y=0 | X<-0)
  switch (kind) {
    case Construction::suff_then_nec:
      return Decomposition({TransitionMatrix(2.0 * tau / pos, (1.0 - tau + rho) / pos),
                            TransitionMatrix(0.5 * pos, 0.5 * (tau + rho - 1.0))});
    case Construction::max_oUB:
      if (!(rho > 0.0)) fail(ErrorKind::precondition, "max_oUB requires rho > 0");
      return Decomposition({TransitionMatrix(tau / (1.0 - rho), 0.0),
                            TransitionMatrix(1.0 - rho, rho)});
    case Construction::nec_then_suff:
      return Decomposition({TransitionMatrix(2.0 * tau / neg, (tau + rho - 1.0) / neg),
                            TransitionMatrix(0.5 * neg, 0.5 * (1.0 - tau + rho))});
    case Construction::max_mUB_nonpos:
      if (rho > 0.0) fail(ErrorKind::precondition, "max_mUB_nonpos requires rho <= 0");
      return Decomposition({TransitionMatrix(2.0 * tau / pos, 0.0),
                            TransitionMatrix(0.5 * pos, rho)});
    case Construction::max_mUB_nonneg: {
      if (rho < 0.0) fail(ErrorKind::precondition, "max_mUB_nonneg requires rho >= 0");
      const double scale = pos / (2.0 * (tau + rho));
      return Decomposition({TransitionMatrix(tau * scale, rho * scale),
                            TransitionMatrix(2.0 * (tau + rho) / pos, 0.0)});
    }
  }
  fail(ErrorKind::precondition, "unknown construction");
}

ExtremalReport extremal_table(const TransitionMatrix& law) {
  require_interior(law);
  const double tau = law.tau();
  const double rho = law.rho();
  const double simple_lo = 2.0 * tau / (1.0 + tau + rho);

  const Decomposition single({law});
  const EvidencePattern direct = EvidencePattern::parse("11");
  const EvidencePattern hidden = EvidencePattern::parse("1?1");
  const EvidencePattern positive = EvidencePattern::parse("111");
  const EvidencePattern negative = EvidencePattern::parse("101");
  const Decomposition suff_nec = construct(Construction::suff_then_nec, law);
  const Decomposition nec_suff = construct(Construction::nec_then_suff, law);

  ExtremalReport report;
  auto set = [&](Regime r, Extremum e, Side s, double value, const Decomposition& witness,
                 const EvidencePattern& pattern) {
    const BoundsResult b = evidence_bounds(witness, pattern);
    const double attained = s == Side::upper ? b.hi : b.lo;
    if (std::fabs(attained - value) > 1e-10) {
      std::ostringstream os;
      os.precision(17);
      os << "extremal witness for " << to_string(e) << ' ' << to_string(s) << " bound ("
         << to_string(r) << ") gives " << attained << ", expected " << value;
      throw std::logic_error(os.str());
    }
    report.cell(r, e, s) = ExtremalCell{value, witness, pattern, b.identified};
  };

  set(Regime::unobserved, Extremum::largest, Side::upper,
      (1.0 + tau - std::fabs(rho)) / (1.0 + tau + rho), single, direct);
  set(Regime::unobserved, Extremum::largest, Side::lower, simple_lo, single, direct);
  set(Regime::unobserved, Extremum::smallest, Side::upper, simple_lo, suff_nec, hidden);
  set(Regime::unobserved, Extremum::smallest, Side::lower, simple_lo, single, direct);

  if (rho > 0.0) {
    set(Regime::positive, Extremum::largest, Side::upper, 1.0 - rho,
        construct(Construction::max_oUB, law), positive);
  } else {
    set(Regime::positive, Extremum::largest, Side::upper, 1.0, single, direct);
  }
  set(Regime::positive, Extremum::largest, Side::lower, 0.5 * (1.0 + tau - rho), nec_suff,
      positive);
  set(Regime::positive, Extremum::smallest, Side::upper, simple_lo, suff_nec, positive);
  set(Regime::positive, Extremum::smallest, Side::lower, simple_lo, single, direct);

  set(Regime::mixed, Extremum::largest, Side::upper, 1.0,
      construct(rho <= 0.0 ? Construction::max_mUB_nonpos : Construction::max_mUB_nonneg, law),
      negative);
  set(Regime::mixed, Extremum::largest, Side::lower, 0.0, nec_suff, negative);
  set(Regime::mixed, Extremum::smallest, Side::upper, 0.0, nec_suff, negative);
  set(Regime::mixed, Extremum::smallest, Side::lower, 0.0, nec_suff, negative);
  return report;
}

double step_upper_bound(const TransitionMatrix& step, int a, int b) {
  return simple_bounds(step, a, b).hi;
}

MixedWorstCase worst_case_mixed(const Decomposition& chain, MixedSearch how) {
  const TransitionMatrix& step = chain[0];
  for (const auto& s : chain.steps()) {
    if (std::fabs(s.tau() - step.tau()) > kTolerance ||
        std::fabs(s.rho() - step.rho()) > kTolerance) {
      fail(ErrorKind::precondition, "worst_case_mixed requires identical steps");
    }
  }
  return worst_case_mixed(step, chain.size(), how);
}

MixedWorstCase worst_case_mixed(const TransitionMatrix& step, std::size_t n, MixedSearch how) {
  check_mixed_inputs(step, n);
  switch (how) {
    case MixedSearch::search: return exhaustive(step, n);
    case MixedSearch::closed_form: return closed_form(step, n);
    case MixedSearch::min_path: return min_path(step, n);
  }
  fail(ErrorKind::precondition, "unknown search mode");
}

}  // namespace causabound
