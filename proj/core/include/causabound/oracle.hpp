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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "causabound/bounds.hpp"
#include "causabound/chain.hpp"

namespace causabound::oracle {

/// One slack value per step, each inside [|tau_i|, 1 - |rho_i|].
struct SlackAssignment {
  std::vector<double> xis;
};

/// Throws ErrorKind::infeasible_slack (or structural on a size mismatch).
void validate(const Decomposition& chain, const SlackAssignment& slack);

SlackAssignment lower_endpoints(const Decomposition& chain);
SlackAssignment upper_endpoints(const Decomposition& chain);

/// Probability of causation given the evidence when every per-step slack is
/// pinned. Evaluated from explicit 2x2 matrix products and its own walk
/// over the observed nodes, independently of the bounds engine.
double pc_at_assignment(const Decomposition& chain, const EvidencePattern& evidence,
                        const SlackAssignment& slack);

struct SharpnessResult {
  bool passed = false;
  BoundsResult bounds;
  double endpoint_min = 0.0;
  double endpoint_max = 0.0;
  SlackAssignment argmin;
  SlackAssignment argmax;
  std::size_t interior_samples = 0;
  std::size_t interior_violations = 0;
  std::optional<SlackAssignment> first_violation;
};

/// Enumerates all 2^n endpoint assignments and `interior_samples` uniform
/// interior ones. Passes iff the endpoint extrema equal evidence_bounds to
/// 1e-10 and no interior value escapes the interval. Requires n <= 8.
SharpnessResult sharpness_check(const Decomposition& chain, const EvidencePattern& evidence,
                                std::size_t interior_samples, std::uint64_t seed);

/// Counts of simulated units by realized chain (bit i = node i) and
/// whether X affected Y.
class SimulationOutcome {
 public:
  SimulationOutcome(std::size_t steps, std::uint64_t seed);

  std::size_t steps() const noexcept { return steps_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t samples() const noexcept { return samples_; }

  void add(std::uint32_t chain_bits, bool caused, std::uint64_t count = 1);
  void merge(const SimulationOutcome& other);

  std::uint64_t count(std::uint32_t chain_bits, bool caused) const;
  /// Units whose realized chain agrees with every observed mark.
  std::uint64_t matching(const EvidencePattern& evidence) const;
  std::uint64_t matching_caused(const EvidencePattern& evidence) const;
  /// Fraction of all units where X affected Y.
  double general_causation_rate() const;
  /// Units for which the response types all transmit (identity or flip);
  /// tracked separately from the potential-outcome comparison.
  std::uint64_t transmitting() const noexcept { return transmitting_; }
  void add_transmitting(std::uint64_t count) noexcept { transmitting_ += count; }

 private:
  std::size_t steps_;
  std::uint64_t seed_;
  std::uint64_t samples_ = 0;
  std::uint64_t transmitting_ = 0;
  std::vector<std::uint64_t> counts_;  // index 2 * chain_bits + caused
};

inline constexpr std::size_t kMaxSimulatedSteps = 16;

/// Draws X ~ Bernoulli(exposure_prob) and independent per-step response
/// types from response_distribution(step_i, xi_i). Each sample's draws
/// depend only on (seed, sample index), so any partition of the samples
/// over threads produces identical counts.
SimulationOutcome simulate(const Decomposition& chain, const SlackAssignment& slack,
                           std::uint64_t samples, std::uint64_t seed,
                           double exposure_prob = 0.5, unsigned threads = 0);

enum class MarkovDecision { pass, reject, inconclusive };

std::string_view to_string(MarkovDecision d) noexcept;

struct MarkovTest {
  std::size_t node = 0;  // M_node is conditioned on
  std::size_t past = 0;  // M_past tested against M_{node+1}
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
  bool sparse = false;
};

struct MarkovCheckResult {
  MarkovDecision decision = MarkovDecision::pass;
  double significance = 0.01;
  std::vector<MarkovTest> tests;
};

/// Tests M_{i+1} independent of M_j given M_i for every j < i with Pearson
/// chi-square statistics, stratified on M_i, Bonferroni-combined at the
/// given level. Any stratum with an expected cell below 5 (after dropping
/// structurally empty rows and columns) makes the result inconclusive.
MarkovCheckResult markov_check(const SimulationOutcome& outcome, double significance);

}  // namespace causabound::oracle
