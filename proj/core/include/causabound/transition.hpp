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
#include <cstdint>

#include "causabound/error.hpp"

namespace causabound {

/// A 2x2 stochastic law between two binary variables, stored as
/// (tau, rho):
///
///   tau = Pr(Y=1 | X<-1) - Pr(Y=1 | X<-0)   (average causal effect)
///   rho = Pr(Y=1 | X<-1) - Pr(Y=0 | X<-0)   (prevalence offset)
///
/// Entries are derived on demand. Any (tau, rho) with |tau| + |rho| <= 1
/// is a valid law; equality means one entry is exactly 1 (degenerate).
class TransitionMatrix {
 public:
  /// Identity law (tau = 1, rho = 0).
  constexpr TransitionMatrix() = default;

  /// Validates |tau| + |rho| <= 1. Violations within kTolerance are
  /// clamped onto the boundary; anything larger throws ErrorKind::domain.
  TransitionMatrix(double tau, double rho);

  /// Builds the law from Pr(Y=1 | X<-0) and Pr(Y=1 | X<-1).
  static TransitionMatrix from_conditionals(double p1_given_do0, double p1_given_do1);

  double tau() const noexcept { return tau_; }
  double rho() const noexcept { return rho_; }

  /// Pr(Y=y | X<-x).
  double entry(int x, int y) const noexcept;

  /// Row-major entries {P00, P01, P10, P11}.
  std::array<double, 4> entries() const noexcept;

  bool is_degenerate() const noexcept;

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

 private:
  double tau_ = 1.0;
  double rho_ = 0.0;
};

/// Law of X -> Z when X -> Y follows `first` and Y -> Z follows `second`.
TransitionMatrix compose(const TransitionMatrix& first, const TransitionMatrix& second);

/// n-fold self composition, evaluated in closed form (geometric series in
/// tau) with log-domain powers so that n in the 1e5 range stays accurate.
TransitionMatrix power(const TransitionMatrix& step, std::int64_t n);

/// The unique step Q with power(Q, n) == overall, for 0 < tau < 1:
/// tau' = tau^(1/n), rho' = rho (1 - tau^(1/n)) / (1 - tau).
TransitionMatrix homogeneous_step(const TransitionMatrix& overall, std::int64_t n);

struct DerivedMeasures {
  double sigma = 0.0;  // relative sufficiency rho / (1 - tau)
  double gamma = 0.0;  // (1 - |sigma|) / (1 + |sigma|)
  double delta = 0.0;  // (1 + tau - |rho|) / (1 + tau + |rho|)
};

/// Requires tau in [0, 1). tau >= 1 throws ErrorKind::undefined.
DerivedMeasures measures(const TransitionMatrix& law);

}  // namespace causabound
