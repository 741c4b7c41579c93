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

#include "causabound/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "causabound/counterfactual.hpp"

namespace causabound::oracle {

namespace {

// splitmix64 finalizer; the per-sample stream is keyed by (seed, index, draw).
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t draw) {
  const std::uint64_t bits = mix(mix(mix(seed) ^ index) ^ draw);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

using Square = std::array<double, 4>;  // row-major Pr(next | prev)

Square multiply(const Square& a, const Square& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Square entries_of(const TransitionMatrix& m) {
  return {m.entry(0, 0), m.entry(0, 1), m.entry(1, 0), m.entry(1, 1)};
}

}  // namespace

void validate(const Decomposition& chain, const SlackAssignment& slack) {
  if (slack.xis.size() != chain.size()) {
    std::ostringstream os;
    os << "slack assignment has " << slack.xis.size() << " values for " << chain.size()
       << " steps";
    fail(ErrorKind::structural, os.str());
  }
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const double lo = std::fabs(chain[i].tau());
    const double hi = 1.0 - std::fabs(chain[i].rho());
    const double xi = slack.xis[i];
    if (!(xi >= lo - kTolerance && xi <= hi + kTolerance)) {
      std::ostringstream os;
      os << "step " << i + 1 << ": slack " << xi << " outside [" << lo << ", " << hi << "]";
      fail(ErrorKind::infeasible_slack, os.str());
    }
  }
}

SlackAssignment lower_endpoints(const Decomposition& chain) {
  SlackAssignment a;
  for (const auto& s : chain.steps()) a.xis.push_back(std::fabs(s.tau()));
  return a;
}

SlackAssignment upper_endpoints(const Decomposition& chain) {
  SlackAssignment a;
  for (const auto& s : chain.steps()) a.xis.push_back(1.0 - std::fabs(s.rho()));
  return a;
}

double pc_at_assignment(const Decomposition& chain, const EvidencePattern& evidence,
                        const SlackAssignment& slack) {
  validate(chain, slack);
  if (evidence.nodes() != chain.size() + 1) {
    fail(ErrorKind::structural, "evidence pattern length does not match the chain");
  }
  double pc = 1.0;
  std::size_t start = 0;
  Square law{1.0, 0.0, 0.0, 1.0};
  double xi = 1.0;
  for (std::size_t node = 1; node < evidence.nodes(); ++node) {
    law = multiply(law, entries_of(chain[node - 1]));
    xi *= slack.xis[node - 1];
    if (!evidence.observed(node)) continue;

    const int a = evidence.value(start);
    const int b = evidence.value(node);
    const double tau = law[3] - law[1];
    const double e = law[2 * a + b];
    if (e <= kTolerance) {
      std::ostringstream os;
      os << "nodes " << start << ".." << node << ": Pr(" << b << " | " << a << ") = 0";
      fail(ErrorKind::null_event, os.str());
    }
    const double numerator = 0.5 * (a == b ? xi + tau : xi - tau);
    pc *= std::clamp(numerator / e, 0.0, 1.0);

    start = node;
    law = {1.0, 0.0, 0.0, 1.0};
    xi = 1.0;
  }
  return pc;
}

SharpnessResult sharpness_check(const Decomposition& chain, const EvidencePattern& evidence,
                                std::size_t interior_samples, std::uint64_t seed) {
  const std::size_t n = chain.size();
  if (n > 8) fail(ErrorKind::precondition, "sharpness check enumerates at most 8 steps");

  SharpnessResult result;
  result.bounds = evidence_bounds(chain, evidence);
  result.interior_samples = interior_samples;
  const SlackAssignment lo = lower_endpoints(chain);
  const SlackAssignment hi = upper_endpoints(chain);

  result.endpoint_min = 2.0;
  result.endpoint_max = -1.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    SlackAssignment a;
    for (std::size_t i = 0; i < n; ++i) a.xis.push_back((mask >> i) & 1u ? hi.xis[i] : lo.xis[i]);
    const double v = pc_at_assignment(chain, evidence, a);
    if (v < result.endpoint_min) {
      result.endpoint_min = v;
      result.argmin = a;
    }
    if (v > result.endpoint_max) {
      result.endpoint_max = v;
      result.argmax = a;
    }
  }

  const Interval range = result.bounds.interval();
  for (std::size_t s = 0; s < interior_samples; ++s) {
    SlackAssignment a;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = uniform(seed, s, i);
      a.xis.push_back(lo.xis[i] + u * (hi.xis[i] - lo.xis[i]));
    }
    const double v = pc_at_assignment(chain, evidence, a);
    if (!range.contains(v, 1e-10)) {
      if (!result.first_violation) result.first_violation = a;
      ++result.interior_violations;
    }
  }

  result.passed = std::fabs(result.endpoint_min - range.lo) <= 1e-10 &&
                  std::fabs(result.endpoint_max - range.hi) <= 1e-10 &&
                  result.interior_violations == 0;
  return result;
}

SimulationOutcome::SimulationOutcome(std::size_t steps, std::uint64_t seed)
    : steps_(steps), seed_(seed) {
  if (steps == 0 || steps > kMaxSimulatedSteps) {
    std::ostringstream os;
    os << "simulation supports 1.." << kMaxSimulatedSteps << " steps, got " << steps;
    fail(ErrorKind::precondition, os.str());
  }
  counts_.assign(std::size_t{2} << (steps + 1), 0);
}

void SimulationOutcome::add(std::uint32_t chain_bits, bool caused, std::uint64_t count) {
  counts_.at(2 * std::size_t{chain_bits} + (caused ? 1 : 0)) += count;
  samples_ += count;
}

void SimulationOutcome::merge(const SimulationOutcome& other) {
  if (other.steps_ != steps_) fail(ErrorKind::structural, "merging outcomes of different chains");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  samples_ += other.samples_;
  transmitting_ += other.transmitting_;
}

std::uint64_t SimulationOutcome::count(std::uint32_t chain_bits, bool caused) const {
  return counts_.at(2 * std::size_t{chain_bits} + (caused ? 1 : 0));
}

namespace {

bool agrees(std::uint32_t bits, const EvidencePattern& evidence) {
  for (std::size_t i = 0; i < evidence.nodes(); ++i) {
    if (evidence.observed(i) && static_cast<int>((bits >> i) & 1u) != evidence.value(i)) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::uint64_t SimulationOutcome::matching(const EvidencePattern& evidence) const {
  if (evidence.steps() != steps_) fail(ErrorKind::structural, "evidence length mismatch");
  std::uint64_t total = 0;
  for (std::uint32_t bits = 0; bits < (1u << (steps_ + 1)); ++bits) {
    if (agrees(bits, evidence)) total += count(bits, false) + count(bits, true);
  }
  return total;
}

std::uint64_t SimulationOutcome::matching_caused(const EvidencePattern& evidence) const {
  if (evidence.steps() != steps_) fail(ErrorKind::structural, "evidence length mismatch");
  std::uint64_t total = 0;
  for (std::uint32_t bits = 0; bits < (1u << (steps_ + 1)); ++bits) {
    if (agrees(bits, evidence)) total += count(bits, true);
  }
  return total;
}

double SimulationOutcome::general_causation_rate() const {
  if (samples_ == 0) return 0.0;
  std::uint64_t caused = 0;
  for (std::size_t i = 1; i < counts_.size(); i += 2) caused += counts_[i];
  return static_cast<double>(caused) / static_cast<double>(samples_);
}

namespace {

enum Response : std::uint8_t { const0, const1, identity, flip };

struct StepSampler {
  std::array<double, 3> cumulative;  // const0, const1, identity; rest is flip

  Response draw(double u) const {
    if (u < cumulative[0]) return const0;
    if (u < cumulative[1]) return const1;
    if (u < cumulative[2]) return identity;
    return flip;
  }
};

int respond(Response r, int input) {
  switch (r) {
    case const0: return 0;
    case const1: return 1;
    case identity: return input;
    case flip: return 1 - input;
  }
  return 0;
}

void simulate_range(const std::vector<StepSampler>& samplers, double exposure_prob,
                    std::uint64_t seed, std::uint64_t begin, std::uint64_t end,
                    SimulationOutcome& out) {
  const std::size_t n = samplers.size();
  std::uint64_t transmitting = 0;
  for (std::uint64_t s = begin; s < end; ++s) {
    const int x = uniform(seed, s, 0) < exposure_prob ? 1 : 0;
    std::uint32_t bits = static_cast<std::uint32_t>(x);
    int node = x;
    int world0 = 0;
    int world1 = 1;
    bool all_transmit = true;
    for (std::size_t i = 0; i < n; ++i) {
      const Response r = samplers[i].draw(uniform(seed, s, i + 1));
      node = respond(r, node);
      world0 = respond(r, world0);
      world1 = respond(r, world1);
      all_transmit = all_transmit && (r == identity || r == flip);
      bits |= static_cast<std::uint32_t>(node) << (i + 1);
    }
    out.add(bits, world0 != world1);
    if (all_transmit) ++transmitting;
  }
  out.add_transmitting(transmitting);
}

}  // namespace

SimulationOutcome simulate(const Decomposition& chain, const SlackAssignment& slack,
                           std::uint64_t samples, std::uint64_t seed, double exposure_prob,
                           unsigned threads) {
  validate(chain, slack);
  if (samples == 0) fail(ErrorKind::precondition, "simulation needs at least one sample");
  if (!(exposure_prob >= 0.0 && exposure_prob <= 1.0)) {
    fail(ErrorKind::domain, "exposure probability must lie in [0, 1]");
  }

  std::vector<StepSampler> samplers;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const ResponseDistribution r = response_distribution(chain[i], slack.xis[i]);
    const double c0 = r.const0;
    const double c1 = c0 + r.const1;
    samplers.push_back({{c0, c1, c1 + r.identity}});
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t per_chunk = 1 << 14;
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, (samples + per_chunk - 1) / per_chunk));
  threads = std::max(threads, 1u);

  std::vector<SimulationOutcome> partial(threads, SimulationOutcome(chain.size(), seed));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t begin = samples * t / threads;
    const std::uint64_t end = samples * (t + 1) / threads;
    pool.emplace_back(simulate_range, std::cref(samplers), exposure_prob, seed, begin, end,
                      std::ref(partial[t]));
  }
  for (auto& th : pool) th.join();

  SimulationOutcome total(chain.size(), seed);
  for (const auto& p : partial) total.merge(p);
  return total;
}

std::string_view to_string(MarkovDecision d) noexcept {
  switch (d) {
    case MarkovDecision::pass: return "pass";
    case MarkovDecision::reject: return "reject";
    case MarkovDecision::inconclusive: return "inconclusive";
  }
  return "?";
}

MarkovCheckResult markov_check(const SimulationOutcome& outcome, double significance) {
  MarkovCheckResult result;
  result.significance = significance;
  const std::size_t n = outcome.steps();
  const std::uint32_t states = 1u << (n + 1);

  // Node i conditioned on, j < i in the past, i + 1 the next node.
  for (std::size_t i = 1; i + 1 <= n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      MarkovTest test;
      test.node = i;
      test.past = j;
      for (int stratum = 0; stratum < 2; ++stratum) {
        std::array<double, 4> table{};  // (M_j, M_{i+1})
        for (std::uint32_t bits = 0; bits < states; ++bits) {
          if (static_cast<int>((bits >> i) & 1u) != stratum) continue;
          const int a = (bits >> j) & 1u;
          const int b = (bits >> (i + 1)) & 1u;
          table[2 * a + b] += static_cast<double>(outcome.count(bits, false) + outcome.count(bits, true));
        }
        const double rows[2] = {table[0] + table[1], table[2] + table[3]};
        const double cols[2] = {table[0] + table[2], table[1] + table[3]};
        const double total = rows[0] + rows[1];
        // An empty row or column is a structural zero: nothing to test.
        if (rows[0] == 0 || rows[1] == 0 || cols[0] == 0 || cols[1] == 0) continue;
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            const double expected = rows[a] * cols[b] / total;
            if (expected < 5.0) test.sparse = true;
            const double d = table[2 * a + b] - expected;
            test.statistic += d * d / expected;
          }
        }
        test.degrees_of_freedom += 1;
      }
      if (test.degrees_of_freedom > 0) {
        const boost::math::chi_squared_distribution<double> dist(test.degrees_of_freedom);
        test.p_value = boost::math::cdf(boost::math::complement(dist, test.statistic));
      }
      result.tests.push_back(test);
    }
  }

  const double level = result.tests.empty() ? significance
                                            : significance / static_cast<double>(result.tests.size());
  bool sparse = false;
  for (const auto& t : result.tests) {
    if (t.sparse) {
      sparse = true;
    } else if (t.p_value < level) {
      result.decision = MarkovDecision::reject;
      return result;
    }
  }
  result.decision = sparse ? MarkovDecision::inconclusive : MarkovDecision::pass;
  return result;
}

}  // namespace causabound::oracle
