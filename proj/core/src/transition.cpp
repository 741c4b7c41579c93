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

#include "causabound/transition.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

namespace causabound {

namespace {

std::string describe(double tau, double rho) {
  std::ostringstream os;
  os.precision(17);
  os << "(tau=" << tau << ", rho=" << rho << ")";
  return os.str();
}

// tau^n for integer n >= 0, via exp(n log|tau|) to keep large n stable.
double int_pow(double base, std::int64_t n) {
  if (n == 0) return 1.0;
  if (base == 0.0) return 0.0;
  const double magnitude = std::exp(static_cast<double>(n) * std::log(std::fabs(base)));
  return (base < 0.0 && (n % 2 != 0)) ? -magnitude : magnitude;
}

// 1 + tau + ... + tau^(n-1).
double geometric_sum(double tau, std::int64_t n) {
  if (n == 0) return 0.0;
  if (tau == 1.0) return static_cast<double>(n);
  if (tau > 0.0) {
    const double log_tau = std::log(tau);
    return std::expm1(static_cast<double>(n) * log_tau) / std::expm1(log_tau);
  }
  return (1.0 - int_pow(tau, n)) / (1.0 - tau);
}

}  // namespace

TransitionMatrix::TransitionMatrix(double tau, double rho) {
  if (!std::isfinite(tau) || !std::isfinite(rho)) {
    fail(ErrorKind::domain, "non-finite transition parameters " + describe(tau, rho));
  }
  const double excess = std::fabs(tau) + std::fabs(rho) - 1.0;
  if (excess > kTolerance) {
    fail(ErrorKind::domain, "transition matrix " + describe(tau, rho) +
                                " violates |tau| + |rho| <= 1");
  }
  if (excess > 0.0) {
    // Pull onto the degenerate boundary, shrinking rho first.
    if (std::fabs(rho) >= excess) {
      rho = std::copysign(std::fabs(rho) - excess, rho);
    } else {
      tau = std::copysign(1.0 - std::fabs(rho), tau);
    }
  }
  tau_ = tau;
  rho_ = rho;
}

TransitionMatrix TransitionMatrix::from_conditionals(double p1_given_do0, double p1_given_do1) {
  auto check = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      std::ostringstream os;
      os << name << " = " << p << " is not a probability";
      fail(ErrorKind::domain, os.str());
    }
  };
  check(p1_given_do0, "Pr(Y=1 | X<-0)");
  check(p1_given_do1, "Pr(Y=1 | X<-1)");
  return {p1_given_do1 - p1_given_do0, p1_given_do1 - (1.0 - p1_given_do0)};
}

double TransitionMatrix::entry(int x, int y) const noexcept {
  if (x == 0) {
    return y == 0 ? 0.5 * (1.0 + tau_ - rho_) : 0.5 * (1.0 - tau_ + rho_);
  }
  return y == 0 ? 0.5 * (1.0 - tau_ - rho_) : 0.5 * (1.0 + tau_ + rho_);
}

std::array<double, 4> TransitionMatrix::entries() const noexcept {
  return {entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1)};
}

bool TransitionMatrix::is_degenerate() const noexcept {
  return std::fabs(tau_) + std::fabs(rho_) >= 1.0 - kTolerance;
}

TransitionMatrix compose(const TransitionMatrix& first, const TransitionMatrix& second) {
  const TransitionMatrix out(first.tau() * second.tau(),
                             first.rho() * second.tau() + second.rho());
#ifndef NDEBUG
  for (int x = 0; x < 2; ++x) {
    for (int z = 0; z < 2; ++z) {
      const double product = first.entry(x, 0) * second.entry(0, z) +
                             first.entry(x, 1) * second.entry(1, z);
      assert(std::fabs(product - out.entry(x, z)) < 1e-9);
    }
  }
#endif
  return out;
}

TransitionMatrix power(const TransitionMatrix& step, std::int64_t n) {
  if (n < 0) fail(ErrorKind::precondition, "matrix power requires n >= 0");
  if (n == 0) return {};
  return {int_pow(step.tau(), n), step.rho() * geometric_sum(step.tau(), n)};
}

TransitionMatrix homogeneous_step(const TransitionMatrix& overall, std::int64_t n) {
  if (n < 1) fail(ErrorKind::precondition, "homogeneous decomposition requires n >= 1");
  const double tau = overall.tau();
  if (!(tau > 0.0 && tau < 1.0)) {
    fail(ErrorKind::unsupported,
         "homogeneous decomposition needs 0 < tau < 1, got " + describe(tau, overall.rho()));
  }
  const double log_step = std::log(tau) / static_cast<double>(n);
  const double step_tau = std::exp(log_step);
  const double one_minus_step_tau = -std::expm1(log_step);
  const double sigma = overall.rho() / (1.0 - tau);
  const double step_rho = sigma * one_minus_step_tau;
  if (std::fabs(step_tau) + std::fabs(step_rho) > 1.0 + kTolerance) {
    fail(ErrorKind::infeasible_construction,
         "homogeneous step " + describe(step_tau, step_rho) + " is not a valid law");
  }
  return {step_tau, step_rho};
}

DerivedMeasures measures(const TransitionMatrix& law) {
  const double tau = law.tau();
  const double rho = law.rho();
  if (tau >= 1.0) {
    fail(ErrorKind::undefined, "relative sufficiency is undefined at tau = 1");
  }
  if (tau < 0.0) {
    fail(ErrorKind::precondition, "derived measures assume tau >= 0, got " + describe(tau, rho));
  }
  DerivedMeasures m;
  m.sigma = rho / (1.0 - tau);
  const double abs_sigma = std::fabs(m.sigma);
  m.gamma = (1.0 - abs_sigma) / (1.0 + abs_sigma);
  m.delta = (1.0 + tau - std::fabs(rho)) / (1.0 + tau + std::fabs(rho));
  return m;
}

}  // namespace causabound
