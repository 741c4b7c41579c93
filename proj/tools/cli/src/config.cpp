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

#include "causabound/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace causabound::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  std::ostringstream os;
  os << key << ": cannot use '" << value << "': " << why;
  throw ConfigError(os.str());
}

double to_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  // from_chars rejects a leading '+'; accept it for convenience.
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    bad_value(key, text, "expected a number");
  }
  return v;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view text) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    bad_value(key, text, "expected a non-negative integer");
  }
  return v;
}

std::vector<double> to_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(to_double(key, part));
  return out;
}

double probability(std::string_view key, std::string_view text) {
  const double v = to_double(key, text);
  if (v < 0.0 || v > 1.0) bad_value(key, text, "expected a probability in [0, 1]");
  return v;
}

const std::vector<std::string_view> kKeys = {
    "tau",  "rho",     "p0",       "p1",  "step",     "n",       "step-tau",
    "step-rho", "evidence", "xy", "n-max",   "out",     "seed",    "samples",
    "interior", "xi",  "exposure", "threads", "precision"};

}  // namespace

const std::vector<std::string_view>& known_keys() { return kKeys; }

void apply(RunConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  if (value.empty()) bad_value(key, value, "empty value");
  if (key == "tau") {
    c.tau = to_list(key, value);
  } else if (key == "rho") {
    c.rho = to_list(key, value);
  } else if (key == "p0") {
    c.p0 = probability(key, value);
  } else if (key == "p1") {
    c.p1 = probability(key, value);
  } else if (key == "step") {
    const auto parts = split(value, ',');
    if (parts.size() != 2) bad_value(key, value, "expected 'tau,rho'");
    try {
      c.steps.emplace_back(to_double(key, parts[0]), to_double(key, parts[1]));
    } catch (const Error& e) {
      bad_value(key, value, e.what());
    }
  } else if (key == "n") {
    c.n = to_int<std::int64_t>(key, value);
    if (*c.n < 1) bad_value(key, value, "expected n >= 1");
  } else if (key == "step-tau") {
    c.step_tau = to_double(key, value);
  } else if (key == "step-rho") {
    c.step_rho = to_double(key, value);
  } else if (key == "evidence") {
    try {
      c.evidence = EvidencePattern::parse(value).to_string();
    } catch (const Error& e) {
      bad_value(key, value, e.what());
    }
  } else if (key == "xy") {
    if (value.size() != 2 || (value[0] != '0' && value[0] != '1') ||
        (value[1] != '0' && value[1] != '1')) {
      bad_value(key, value, "expected two bits, e.g. 11");
    }
    c.xy = std::pair{value[0] - '0', value[1] - '0'};
  } else if (key == "n-max") {
    c.n_max = to_int<std::int64_t>(key, value);
    if (*c.n_max < 1) bad_value(key, value, "expected n-max >= 1");
  } else if (key == "out") {
    c.out = std::string(value);
  } else if (key == "seed") {
    c.seed = to_int<std::uint64_t>(key, value);
  } else if (key == "samples") {
    c.samples = to_int<std::uint64_t>(key, value);
  } else if (key == "interior") {
    c.interior = to_int<std::uint64_t>(key, value);
  } else if (key == "xi") {
    c.xi = to_list(key, value);
  } else if (key == "exposure") {
    c.exposure = probability(key, value);
  } else if (key == "threads") {
    c.threads = to_int<unsigned>(key, value);
  } else if (key == "precision") {
    c.precision = to_int<int>(key, value);
    if (*c.precision < 1 || *c.precision > 17) bad_value(key, value, "expected 1..17");
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

void load(RunConfig& config, std::istream& in, std::string_view source_name) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    try {
      if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'");
      apply(config, trim(text.substr(0, eq)), text.substr(eq + 1));
    } catch (const ConfigError& e) {
      std::ostringstream os;
      os << source_name << ":" << number << ": " << e.what();
      throw ConfigError(os.str());
    }
  }
}

void load_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  load(config, in, path);
}

std::optional<TransitionMatrix> target_law(const RunConfig& c) {
  const bool by_params = !c.tau.empty() || !c.rho.empty();
  const bool by_probs = c.p0 || c.p1;
  if (by_params && by_probs) {
    throw ConfigError("give the target law either as tau/rho or as p0/p1, not both");
  }
  try {
    if (by_probs) {
      if (!c.p0 || !c.p1) throw ConfigError("p0 and p1 must be given together");
      return TransitionMatrix::from_conditionals(*c.p0, *c.p1);
    }
    if (!by_params) return std::nullopt;
    if (c.tau.size() != 1 || c.rho.size() != 1) {
      throw ConfigError("this command takes a single tau and a single rho");
    }
    return TransitionMatrix(c.tau[0], c.rho[0]);
  } catch (const Error& e) {
    throw ConfigError(std::string("target law: ") + e.what());
  }
}

std::optional<Decomposition> decomposition(const RunConfig& c) {
  const auto law = target_law(c);
  if (!c.steps.empty()) {
    if (c.n) throw ConfigError("give either explicit steps or n, not both");
    Decomposition d(c.steps);
    if (law) {
      const auto composed = d.composed();
      if (std::fabs(composed.tau() - law->tau()) > 1e-9 ||
          std::fabs(composed.rho() - law->rho()) > 1e-9) {
        std::ostringstream os;
        os << "steps compose to (tau=" << composed.tau() << ", rho=" << composed.rho()
           << "), not the target (tau=" << law->tau() << ", rho=" << law->rho() << ")";
        throw ConfigError(os.str());
      }
    }
    return d;
  }
  if (c.n) {
    if (!law) throw ConfigError("n needs a target law (tau/rho or p0/p1)");
    return Decomposition::homogeneous(homogeneous_step(*law, *c.n),
                                      static_cast<std::size_t>(*c.n));
  }
  return std::nullopt;
}

std::uint64_t resolve_seed(const RunConfig& c, std::uint64_t fallback) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("CAUSABOUND_SEED"); env != nullptr && *env != '\0') {
    try {
      return to_int<std::uint64_t>("CAUSABOUND_SEED", env);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("environment: ") + e.what());
    }
  }
  return fallback;
}

}  // namespace causabound::cli
