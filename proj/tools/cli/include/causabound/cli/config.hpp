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

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causabound/chain.hpp"
#include "causabound/transition.hpp"

namespace causabound::cli {

/// Malformed flags, config lines or inconsistent settings (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a subcommand may read. Fields stay empty unless set by the
/// config file or a flag; flags are applied after the file and win.
struct RunConfig {
  // Target law: either (tau, rho) or the two interventional probabilities.
  std::vector<double> tau;  // lists allowed for sweeps
  std::vector<double> rho;
  std::optional<double> p0;  // Pr(Y=1 | X<-0)
  std::optional<double> p1;  // Pr(Y=1 | X<-1)

  std::vector<TransitionMatrix> steps;  // explicit decomposition
  std::optional<std::int64_t> n;        // homogeneous decomposition length
  std::optional<double> step_tau;       // per-step law (plan)
  std::optional<double> step_rho;

  std::optional<std::string> evidence;
  std::optional<std::pair<int, int>> xy;
  std::optional<std::int64_t> n_max;

  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> interior;
  std::vector<double> xi;
  std::optional<double> exposure;
  std::optional<unsigned> threads;
  std::optional<int> precision;
};

/// Keys understood by apply() (and therefore by config files and flags).
const std::vector<std::string_view>& known_keys();

/// Sets one key. Repeated `step` keys append; every other key replaces.
void apply(RunConfig& config, std::string_view key, std::string_view value);

/// Reads `key = value` lines; `#` starts a comment, blank lines are skipped.
void load(RunConfig& config, std::istream& in, std::string_view source_name);
void load_file(RunConfig& config, const std::string& path);

/// The single target law, from (tau, rho) or (p0, p1). Throws ConfigError
/// when neither or both ways are used, or when a sweep list was given.
std::optional<TransitionMatrix> target_law(const RunConfig& config);

/// Explicit steps, or n copies of the homogeneous root of the target.
/// Checks that explicit steps compose to the target when both are given.
std::optional<Decomposition> decomposition(const RunConfig& config);

/// Seed from the config, else CAUSABOUND_SEED, else `fallback`.
std::uint64_t resolve_seed(const RunConfig& config, std::uint64_t fallback);

}  // namespace causabound::cli
