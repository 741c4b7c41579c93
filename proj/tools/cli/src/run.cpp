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

#include "causabound/cli/run.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "causabound/asymptotics.hpp"
#include "causabound/bounds.hpp"
#include "causabound/chain.hpp"
#include "causabound/cli/config.hpp"
#include "causabound/cli/output.hpp"
#include "causabound/error.hpp"
#include "causabound/extremal.hpp"
#include "causabound/oracle.hpp"

namespace causabound::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20260101;
constexpr std::int64_t kDefaultNMax = 30;
const std::vector<double> kFigureRhos = {-0.4, -0.2, 0.0, 0.2, 0.4, 0.6};

// key=value lines for the text-mode commands.
class Report {
 public:
  Report(std::ostream& out, int digits) : out_(out), digits_(digits) {}

  void put(const std::string& key, const std::string& value) { out_ << key << "=" << value << "\n"; }
  void put(const std::string& key, double value) { put(key, format_number(value, digits_)); }
  void put(const std::string& key, bool value) { put(key, std::string(value ? "true" : "false")); }
  void put(const std::string& key, std::uint64_t value) { put(key, std::to_string(value)); }
  void put(const std::string& key, const Interval& v) {
    put(key, "[" + format_number(v.lo, digits_) + ", " + format_number(v.hi, digits_) + "]");
  }
  std::string num(double v) const { return format_number(v, digits_); }

 private:
  std::ostream& out_;
  int digits_;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw ConfigError("write failed for '" + path.string() + "'");
}

// Tables go to --out when given, otherwise to stdout.
void emit(const RunConfig& c, std::ostream& out, const std::string& content) {
  if (c.out) write_file(*c.out, content);
  else out << content;
}

TransitionMatrix require_law(const RunConfig& c) {
  auto law = target_law(c);
  if (!law) throw ConfigError("a target law is required (--tau/--rho or --p0/--p1)");
  return *law;
}

std::int64_t n_max_or(const RunConfig& c, std::int64_t fallback) {
  return c.n_max.value_or(fallback);
}

std::string steps_text(const Decomposition& d, const Report& r) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    s += (i ? ";" : "") + r.num(d[i].tau()) + "," + r.num(d[i].rho());
  }
  return s;
}

// Evidence from --evidence, else endpoints-only from --xy (default 11).
EvidencePattern evidence_for(const RunConfig& c, std::size_t steps) {
  if (c.evidence) {
    auto e = EvidencePattern::parse(*c.evidence);
    if (e.nodes() != steps + 1) {
      throw ConfigError("evidence '" + *c.evidence + "' has " + std::to_string(e.nodes()) +
                        " nodes but the chain has " + std::to_string(steps + 1));
    }
    if (c.xy && (e.x() != c.xy->first || e.y() != c.xy->second)) {
      throw ConfigError("--xy disagrees with the endpoints of --evidence");
    }
    return e;
  }
  const auto [x, y] = c.xy.value_or(std::pair{1, 1});
  return EvidencePattern::endpoints_only(steps, x, y);
}

int cmd_bounds(const RunConfig& c, std::ostream& out) {
  Report r(out, c.precision.value_or(6));
  auto chain = decomposition(c);
  const auto law = target_law(c);
  if (!chain && !law) throw ConfigError("a target law or --step list is required");
  if (!chain && c.evidence) chain = Decomposition({*law});
  BoundsResult b;
  if (!chain) {
    const auto [x, y] = c.xy.value_or(std::pair{1, 1});
    r.put("tau", law->tau());
    r.put("rho", law->rho());
    r.put("xy", std::to_string(x) + std::to_string(y));
    b = simple_bounds(*law, x, y);
  } else {
    const auto composed = chain->composed();
    const auto e = evidence_for(c, chain->size());
    r.put("tau", composed.tau());
    r.put("rho", composed.rho());
    r.put("steps", steps_text(*chain, r));
    r.put("evidence", e.to_string());
    b = evidence_bounds(*chain, e);
  }
  r.put("method", std::string(to_string(b.method)));
  r.put("lo", b.lo);
  r.put("hi", b.hi);
  r.put("identified", b.identified);
  r.put("interval", b.interval());
  return kExitOk;
}

int cmd_extremal(const RunConfig& c, std::ostream& out) {
  const auto law = require_law(c);
  const auto report = extremal_table(law);
  std::string s = "regime,extremum,side,value,identified,pattern,witness\n";
  const Report r(out, 9);
  for (auto reg : {Regime::unobserved, Regime::positive, Regime::mixed}) {
    for (auto ext : {Extremum::largest, Extremum::smallest}) {
      for (auto side : {Side::upper, Side::lower}) {
        const auto& cell = report.cell(reg, ext, side);
        s += std::string(to_string(reg)) + "," + std::string(to_string(ext)) + "," +
             std::string(to_string(side)) + "," + format_number(cell.value, 9) + "," +
             (cell.identified ? "true" : "false") + "," + cell.pattern.to_string() + ",\"" +
             steps_text(cell.witness, r) + "\"\n";
      }
    }
  }
  emit(c, out, s);
  return kExitOk;
}

std::vector<ProfileRow> profile_rows(const TransitionMatrix& law, std::int64_t n_max) {
  if (n_max < 2) throw ConfigError("n-max must be at least 2");
  std::vector<ProfileRow> rows;
  for (std::int64_t n = 2; n <= n_max; ++n) rows.push_back(profile(law, n));
  return rows;
}

int cmd_profile(const RunConfig& c, std::ostream& out) {
  emit(c, out, profile_csv(profile_rows(require_law(c), n_max_or(c, kDefaultNMax))));
  return kExitOk;
}

std::string optional_interval(const std::optional<Interval>& v, const Report& r) {
  return v ? "[" + r.num(v->lo) + ", " + r.num(v->hi) + "]" : std::string("none");
}

int cmd_limits(const RunConfig& c, std::ostream& out) {
  Report r(out, c.precision.value_or(6));
  const auto law = require_law(c);
  const auto lim = limits(law);
  r.put("degenerate", lim.degenerate);
  r.put("unobserved", lim.unobserved);
  r.put("observed", lim.observed);
  r.put("mixed", optional_interval(lim.mixed, r));
  const auto n_max = n_max_or(c, 64);
  const auto mono = monotonicity_report(law, n_max);
  r.put("monotonicity.n_max", static_cast<std::uint64_t>(n_max));
  if (mono.skipped) {
    r.put("monotonicity", std::string("skipped (degenerate law)"));
    return kExitOk;
  }
  for (const auto& check : mono.checks) {
    std::string v = check.skipped ? "skipped" : check.passed ? "passed" : "failed";
    if (check.first_violation) v += " at n=" + std::to_string(*check.first_violation);
    r.put("check." + check.name, v);
  }
  r.put("monotonicity.all_passed", mono.all_passed());
  return kExitOk;
}

int cmd_plan(const RunConfig& c, std::ostream& out) {
  PlanReport plan;
  if (c.step_tau || c.step_rho) {
    if (!c.step_tau || !c.step_rho || !c.n) {
      throw ConfigError("plan needs --step-tau, --step-rho and --n together");
    }
    if (!c.steps.empty()) throw ConfigError("give either --step-tau/--step-rho or --step, not both");
    plan = plan_single_observation(TransitionMatrix(*c.step_tau, *c.step_rho), *c.n);
  } else {
    const auto chain = decomposition(c);
    if (!chain) throw ConfigError("plan needs --step-tau/--step-rho/--n or a decomposition");
    plan = plan_single_observation(*chain);
  }
  Report r(out, c.precision.value_or(6));
  r.put("lb_without_observation", plan.lb_without_observation);
  std::string best;
  for (auto k : plan.best_k) best += (best.empty() ? "" : ",") + std::to_string(k);
  r.put("best_k", best);
  std::string s = "k,lb_if_one,posterior_one,expected_lb\n";
  for (const auto& row : plan.rows) {
    s += std::to_string(row.k) + "," + format_number(row.lb_if_one, 9) + "," +
         format_number(row.posterior_one, 9) + "," + format_number(row.expected_lb, 9) + "\n";
  }
  if (c.out) {
    write_file(*c.out, s);
  } else {
    out << "\n" << s;
  }
  return kExitOk;
}

int cmd_oracle(const RunConfig& c, std::ostream& out) {
  const auto chain = decomposition(c);
  if (!chain) throw ConfigError("oracle needs a decomposition (--step list, or --n with a law)");
  const auto e = evidence_for(c, chain->size());
  const auto seed = resolve_seed(c, kDefaultSeed);
  Report r(out, c.precision.value_or(6));
  r.put("steps", steps_text(*chain, r));
  r.put("evidence", e.to_string());
  r.put("seed", seed);
  const auto b = evidence_bounds(*chain, e);
  r.put("bounds", b.interval());

  if (chain->size() <= 8) {
    const auto sharp = oracle::sharpness_check(*chain, e, c.interior.value_or(1000), seed);
    r.put("sharpness.passed", sharp.passed);
    r.put("sharpness.endpoint_min", sharp.endpoint_min);
    r.put("sharpness.endpoint_max", sharp.endpoint_max);
    r.put("sharpness.interior_samples", static_cast<std::uint64_t>(sharp.interior_samples));
    r.put("sharpness.interior_violations", static_cast<std::uint64_t>(sharp.interior_violations));
  } else {
    r.put("sharpness", std::string("skipped (more than 8 steps)"));
  }

  if (!c.samples) return kExitOk;
  oracle::SlackAssignment slack;
  if (!c.xi.empty()) {
    slack.xis = c.xi;
  } else {
    // Midpoint of each step's admissible range.
    for (const auto& step : chain->steps()) {
      const auto range = xi_bounds(step);
      slack.xis.push_back(0.5 * (range.lo + range.hi));
    }
  }
  oracle::validate(*chain, slack);
  const auto sim = oracle::simulate(*chain, slack, *c.samples, seed, c.exposure.value_or(0.5),
                                    c.threads.value_or(0));
  double product = 1.0;
  for (double xi : slack.xis) product *= xi;
  const double rate = sim.general_causation_rate();
  const double se = std::sqrt(product * (1.0 - product) / static_cast<double>(sim.samples()));
  std::string xis;
  for (double xi : slack.xis) xis += (xis.empty() ? "" : ",") + r.num(xi);
  r.put("simulate.xi", xis);
  r.put("simulate.samples", sim.samples());
  r.put("simulate.general_rate", rate);
  r.put("simulate.expected_general_rate", product);
  r.put("simulate.standard_error", se);
  const auto matching = sim.matching(e);
  r.put("simulate.matching", matching);
  if (matching > 0) {
    const double pc = static_cast<double>(sim.matching_caused(e)) / static_cast<double>(matching);
    r.put("simulate.empirical_pc", pc);
    r.put("simulate.within_bounds", pc >= b.lo - 1e-12 && pc <= b.hi + 1e-12);
  }
  const auto markov = oracle::markov_check(sim, 0.01);
  r.put("markov.decision", std::string(oracle::to_string(markov.decision)));
  r.put("markov.tests", static_cast<std::uint64_t>(markov.tests.size()));
  return kExitOk;
}

std::vector<double> default_tau_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 19; ++i) g.push_back(0.05 * i);
  return g;
}

std::vector<ComparisonRow> comparison_rows(const std::vector<double>& taus,
                                           const std::vector<double>& rhos) {
  std::vector<ComparisonRow> rows;
  for (double rho : rhos) {
    for (double tau : taus) {
      // Only the interior of the valid region with tau > 0 is comparable.
      if (tau <= 0.0 || tau + std::fabs(rho) >= 1.0) continue;
      rows.push_back(compare_at(TransitionMatrix(tau, rho)));
    }
  }
  return rows;
}

int cmd_compare(const RunConfig& c, std::ostream& out) {
  if (c.p0 || c.p1) throw ConfigError("compare sweeps --tau/--rho lists");
  const auto taus = c.tau.empty() ? default_tau_grid() : c.tau;
  const auto rhos = c.rho.empty() ? std::vector<double>{-0.2, 0.0, 0.2} : c.rho;
  emit(c, out, comparison_csv(comparison_rows(taus, rhos)));
  return kExitOk;
}

std::string rho_label(double rho) { return format_number(rho, 6); }

int cmd_figures(const RunConfig& c, std::ostream& out) {
  if (c.p0 || c.p1) throw ConfigError("figures takes --tau and a --rho list");
  if (c.tau.size() > 1) throw ConfigError("figures takes a single --tau");
  const double tau = c.tau.empty() ? 0.2 : c.tau.front();
  const auto rhos = c.rho.empty() ? kFigureRhos : c.rho;
  const auto n_max = n_max_or(c, kDefaultNMax);
  const std::filesystem::path dir = c.out.value_or("figures");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create '" + dir.string() + "': " + ec.message());

  std::vector<TransitionMatrix> laws;
  for (double rho : rhos) {
    try {
      laws.emplace_back(tau, rho);
    } catch (const Error& e) {
      throw ConfigError("tau=" + rho_label(tau) + ", rho=" + rho_label(rho) + ": " + e.what());
    }
  }
  for (const auto& law : laws) {
    const auto rows = profile_rows(law, n_max);
    const std::string stem = "bands_rho_" + rho_label(law.rho());
    write_file(dir / (stem + ".csv"), profile_csv(rows));
    write_file(dir / (stem + ".svg"),
               profile_svg(rows, "Homogeneous bounds, tau = " + rho_label(tau) +
                                     ", rho = " + rho_label(law.rho())));
    out << stem << ".csv\n" << stem << ".svg\n";
  }
  const auto cmp = comparison_rows(default_tau_grid(), rhos);
  write_file(dir / "comparison.csv", comparison_csv(cmp));
  write_file(dir / "comparison.svg", comparison_svg(cmp));
  out << "comparison.csv\ncomparison.svg\n";
  return kExitOk;
}

int fail_line(std::ostream& err, std::string_view kind, std::string_view message, int code) {
  std::string text(message);
  std::replace(text.begin(), text.end(), '\n', ' ');
  err << "causabound: error: " << kind << ": " << text << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharp bounds on the probability of causation through mediation chains",
               "causabound"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "key = value file; flags override it");

  // Every config key is also a flag; values are applied as text so the
  // file and the command line go through one parser.
  std::map<std::string, std::vector<std::string>> flags;
  std::map<std::string, CLI::Option*> options;
  for (auto key : known_keys()) {
    const std::string name(key);
    options[name] = app.add_option("--" + name, flags[name])
                        ->expected(1)
                        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
                        ->allow_extra_args(false);
  }

  const std::map<std::string, int (*)(const RunConfig&, std::ostream&)> commands = {
      {"bounds", cmd_bounds},   {"extremal", cmd_extremal}, {"profile", cmd_profile},
      {"limits", cmd_limits},   {"plan", cmd_plan},         {"oracle", cmd_oracle},
      {"compare", cmd_compare}, {"figures", cmd_figures}};
  const std::map<std::string, std::string> blurbs = {
      {"bounds", "bounds for a law, chain and evidence pattern"},
      {"extremal", "extreme two-step bounds with witnesses (CSV)"},
      {"profile", "homogeneous-chain bounds for n = 2..n-max (CSV)"},
      {"limits", "n -> infinity limits and monotonicity checks"},
      {"plan", "value of observing one mediator node"},
      {"oracle", "brute-force sharpness check and Monte Carlo simulation"},
      {"compare", "bound comparison over a tau/rho grid (CSV)"},
      {"figures", "bands per rho and the comparison plot (CSV + SVG)"}};
  for (const auto& [name, blurb] : blurbs) app.add_subcommand(name, blurb);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail_line(err, "usage", e.what(), kExitConfig);
  }

  try {
    RunConfig config;
    if (!config_path.empty()) load_file(config, config_path);
    if (options.at("step")->count() > 0) config.steps.clear();
    for (auto key : known_keys()) {
      for (const auto& value : flags[std::string(key)]) apply(config, key, value);
    }
    const auto* sub = app.get_subcommands().front();
    return commands.at(sub->get_name())(config, out);
  } catch (const ConfigError& e) {
    return fail_line(err, "config", e.what(), kExitConfig);
  } catch (const Error& e) {
    const bool input_error = e.kind() == ErrorKind::domain || e.kind() == ErrorKind::structural;
    return fail_line(err, to_string(e.kind()), e.what(), input_error ? kExitConfig : kExitModule);
  } catch (const std::exception& e) {
    return fail_line(err, "internal", e.what(), kExitModule);
  }
}

}  // namespace causabound::cli
