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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are the ones stated for each criterion.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "causabound/asymptotics.hpp"
#include "causabound/baselines.hpp"
#include "causabound/bounds.hpp"
#include "causabound/cli/run.hpp"
#include "causabound/extremal.hpp"
#include "causabound/oracle.hpp"
#include "oracles.hpp"

using namespace causabound;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  // Records the first few failures; later ones only bump the count.
  void fail(const std::string& what) {
    pass = false;
    if (++failures <= 3) detail += (detail.empty() ? "" : "; ") + what;
  }
  int failures = 0;
};

std::string str(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string law_str(const TransitionMatrix& p) {
  return "(" + str(p.tau()) + "," + str(p.rho()) + ")";
}

// tau in {0.1, 0.2, 0.4} x rho in {-0.5, -0.2, 0, 0.2, 0.5}, feasible cells.
std::vector<TransitionMatrix> grid() {
  std::vector<TransitionMatrix> g;
  for (double tau : {0.1, 0.2, 0.4}) {
    for (double rho : {-0.5, -0.2, 0.0, 0.2, 0.5}) {
      if (std::fabs(tau) + std::fabs(rho) <= 1.0) g.emplace_back(tau, rho);
    }
  }
  return g;
}

Verdict ac1_medicine() {
  Verdict v;
  const auto b = simple_bounds({1.0 / 3.0, 0.0}, 1, 1);
  if (std::fabs(b.lo - 0.5) > 1e-12 || std::fabs(b.hi - 1.0) > 1e-12) {
    v.fail("simple bounds [" + str(b.lo) + ", " + str(b.hi) + "]");
  }
  const double o = limits({1.0 / 3.0, 0.0}).observed.lo;
  if (std::fabs(o - 1.0 / std::sqrt(3.0)) > 1e-6) v.fail("oLB_inf " + str(o));
  if (v.pass) v.detail = "[0.5, 1] and oLB_inf = " + str(o);
  return v;
}

Verdict ac2_prescription() {
  Verdict v;
  const TransitionMatrix law(1.0 / 3.0, 0.0);
  const auto cell = extremal_table(law).cell(Regime::positive, Extremum::largest, Side::lower);
  if (std::fabs(cell.value - 2.0 / 3.0) > 1e-12) v.fail("table value " + str(cell.value));
  // X = 1 necessary for M = 1, M = 1 sufficient for Y = 1, all nodes at 1.
  const auto witness = construct(Construction::nec_then_suff, law);
  const auto b = evidence_bounds(witness, EvidencePattern::parse("111"));
  if (std::fabs(b.lo - 2.0 / 3.0) > 1e-12) v.fail("witness gives " + str(b.lo));
  if (v.pass) v.detail = "largest observed lower bound " + str(cell.value);
  return v;
}

Verdict ac3_domino() {
  Verdict v;
  const auto plan = plan_single_observation(TransitionMatrix(0.99, 0.0), 120);
  const double none = plan.lb_without_observation;
  if (std::fabs(none - 0.461) > 0.001) v.fail("no-observation LB " + str(none));
  double mid = 0, first = 0;
  for (const auto& row : plan.rows) {
    if (row.k == 60) mid = row.lb_if_one;
    if (row.k == 1) first = row.lb_if_one;
    if (std::fabs(row.expected_lb - none) > 1e-12) {
      v.fail("expected LB at k=" + std::to_string(row.k) + " is " + str(row.expected_lb));
    }
  }
  if (!(mid > 0.5) || std::fabs(mid - 0.501) > 0.002) v.fail("midpoint LB " + str(mid));
  if (std::fabs(first - 0.463) > 0.002) v.fail("node-1 LB " + str(first));
  if (v.pass) {
    v.detail = "none " + str(none) + ", midpoint " + str(mid) + ", node 1 " + str(first);
  }
  return v;
}

Verdict ac4_extreme_table() {
  Verdict v;
  int cells = 0;
  for (const auto& p : grid()) {
    ExtremalReport report;
    try {
      report = extremal_table(p);
    } catch (const std::exception& e) {
      v.fail(law_str(p) + ": " + e.what());
      continue;
    }
    for (Regime r : {Regime::unobserved, Regime::positive, Regime::mixed}) {
      for (Extremum e : {Extremum::largest, Extremum::smallest}) {
        for (Side s : {Side::upper, Side::lower}) {
          const auto& c = report.cell(r, e, s);
          const auto b = evidence_bounds(c.witness, c.pattern);
          const double got = s == Side::upper ? b.hi : b.lo;
          ++cells;
          if (std::fabs(got - c.value) > 1e-10) {
            v.fail(law_str(p) + " " + std::string(to_string(r)) + " " +
                   std::string(to_string(e)) + " " + std::string(to_string(s)));
          }
        }
      }
      // Starred cells: the smallest upper bound in each regime is a point.
      if (!report.cell(r, Extremum::smallest, Side::upper).identified) {
        v.fail(law_str(p) + " smallest upper (" + std::string(to_string(r)) + ") not identified");
      }
    }
  }
  if (v.pass) v.detail = std::to_string(cells) + " cells over " + std::to_string(grid().size()) + " laws";
  return v;
}

Verdict ac5_sharpness() {
  Verdict v;
  std::mt19937_64 rng(20260505);
  std::uniform_int_distribution<std::size_t> length(1, 4);
  std::size_t cases = 0, skipped = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto chain = oracles::random_chain(rng, length(rng));
    for (const auto& e : oracles::all_patterns(chain.size())) {
      if (!oracles::possible(chain, e)) {
        ++skipped;
        continue;
      }
      const auto r = oracle::sharpness_check(chain, e, 1000, 7000 + trial);
      ++cases;
      if (!r.passed) {
        v.fail("trial " + std::to_string(trial) + " " + e.to_string() + ": endpoints [" +
               str(r.endpoint_min) + ", " + str(r.endpoint_max) + "] vs [" + str(r.bounds.lo) +
               ", " + str(r.bounds.hi) + "], " + std::to_string(r.interior_violations) +
               " interior escapes");
      }
    }
  }
  v.detail = (v.pass ? "" : v.detail + "; ") + std::to_string(cases) + " cases (" +
             std::to_string(skipped) + " zero-probability patterns skipped)";
  return v;
}

// Alternating: consecutive nodes differ everywhere except at n mod 2 places.
bool alternating(const EvidencePattern& e) {
  int repeats = 0;
  for (std::size_t i = 0; i + 1 < e.nodes(); ++i) repeats += e.value(i) == e.value(i + 1);
  return repeats == static_cast<int>(e.steps() % 2);
}

Verdict ac6_mixed() {
  Verdict v;
  int laws = 0;
  for (double tau : {0.5, 0.7, 0.8, 0.9, 0.95}) {
    for (double sigma : {-0.8, -0.5, -0.2, 0.2, 0.5, 0.8}) {
      const TransitionMatrix step(tau, sigma * (1 - tau));
      // gamma and delta' straight from their definitions.
      const double gamma = (1 - std::fabs(sigma)) / (1 + std::fabs(sigma));
      const double delta = (1 + tau - std::fabs(step.rho())) / (1 + tau + std::fabs(step.rho()));
      if (!(gamma < delta * delta)) continue;
      ++laws;
      for (std::size_t n = 4; n <= 16; ++n) {
        const auto s = worst_case_mixed(step, n, MixedSearch::search);
        const double expected = n % 2 == 0
                                    ? std::pow(gamma, n / 2.0)
                                    : std::pow(gamma, (n - 1) / 2.0) * delta;
        if (std::fabs(s.value - expected) > 1e-12) {
          v.fail(law_str(step) + " n=" + std::to_string(n) + ": " + str(s.value) + " vs " +
                 str(expected));
        }
        if (!alternating(s.pattern)) {
          v.fail(law_str(step) + " n=" + std::to_string(n) + " witness " + s.pattern.to_string());
        }
      }
    }
  }
  if (laws < 10) v.fail("only " + std::to_string(laws) + " laws satisfy gamma < delta'^2");
  if (v.pass) v.detail = std::to_string(laws) + " per-step laws, n = 4..16";
  return v;
}

Verdict ac7_limits() {
  Verdict v;
  for (const auto& p : grid()) {
    if (p.is_degenerate()) continue;
    const auto lim = limits(p);
    const auto row = profile(p, 100000);
    auto close = [&](double a, double b, const char* what) {
      if (std::fabs(a - b) > 1e-3) v.fail(law_str(p) + " " + what + " " + str(a) + " vs " + str(b));
    };
    close(row.unobserved.lo, lim.unobserved.lo, "uLB");
    close(row.unobserved.hi, lim.unobserved.hi, "uUB");
    close(row.observed.lo, lim.observed.lo, "oLB");
    close(row.observed.hi, lim.observed.hi, "oUB");
    if (row.mixed && lim.mixed) {
      close(row.mixed->lo, lim.mixed->lo, "mLB");
      close(row.mixed->hi, lim.mixed->hi, "mUB");
    }
    if (p.rho() != 0.0) {
      const double m = profile(p, 1000).mixed->hi;
      if (m > 1e-6) v.fail(law_str(p) + " mUB_1000 = " + str(m));
    } else {
      for (std::int64_t n = 2; n <= 2000; ++n) {
        if (profile(p, n).mixed->hi != 1.0) {
          v.fail(law_str(p) + " mUB_" + std::to_string(n) + " != 1");
          break;
        }
      }
    }
  }
  if (v.pass) v.detail = "profile(1e5) within 1e-3 of the limits on the grid";
  return v;
}

Verdict ac8_doubling() {
  Verdict v;
  int checks = 0;
  for (const auto& p : grid()) {
    for (std::int64_t n : {1, 2, 4, 8, 16}) {
      const auto a = profile(p, n), b = profile(p, 2 * n);
      const std::string at = law_str(p) + " n=" + std::to_string(n);
      ++checks;
      if (!(b.unobserved.hi < a.unobserved.hi)) {
        v.fail(at + ": uUB " + str(b.unobserved.hi) + " !< " + str(a.unobserved.hi));
      }
      if (!(b.observed.lo > a.observed.lo)) v.fail(at + ": oLB not increasing");
      if (p.rho() > 0 && !(b.observed.hi < a.observed.hi)) v.fail(at + ": oUB not decreasing");
    }
  }
  v.detail = (v.pass ? "" : v.detail + "; ") + std::to_string(v.failures) + " of " +
             std::to_string(checks) + " (law, n) points violate";
  return v;
}

Verdict ac9_monte_carlo() {
  Verdict v;
  constexpr std::uint64_t kSamples = 100000;
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> u(0, 1);
  int patterns = 0;
  for (int scenario = 0; scenario < 20; ++scenario) {
    const auto chain = oracles::random_chain(rng, 1 + scenario % 4);
    oracle::SlackAssignment slack;
    double product = 1.0;
    for (const auto& s : chain.steps()) {
      const double lo = std::fabs(s.tau()), hi = 1 - std::fabs(s.rho());
      slack.xis.push_back(lo + u(rng) * (hi - lo));
      product *= slack.xis.back();
    }
    const auto sim = oracle::simulate(chain, slack, kSamples, 4242 + scenario);
    const std::string tag = "scenario " + std::to_string(scenario);

    const double se = std::sqrt(product * (1 - product) / kSamples);
    if (std::fabs(sim.general_causation_rate() - product) > 3 * se) {
      v.fail(tag + ": Pr(Y0!=Y1) " + str(sim.general_causation_rate()) + " vs " + str(product));
    }
    for (const auto& e : oracles::all_patterns(chain.size())) {
      const auto m = sim.matching(e);
      if (m == 0 || !oracles::possible(chain, e)) continue;
      ++patterns;
      const double pc = static_cast<double>(sim.matching_caused(e)) / static_cast<double>(m);
      const auto b = evidence_bounds(chain, e);
      // Sampling error of a proportion at the bound it would cross.
      const double edge = pc < b.lo ? b.lo : b.hi;
      const double slack_se = std::sqrt(edge * (1 - edge) / static_cast<double>(m));
      if (pc < b.lo - 3 * slack_se - 1e-12 || pc > b.hi + 3 * slack_se + 1e-12) {
        v.fail(tag + " " + e.to_string() + ": " + str(pc) + " outside [" + str(b.lo) + ", " +
               str(b.hi) + "] (n=" + std::to_string(m) + ")");
      }
    }
  }
  v.detail = (v.pass ? "" : v.detail + "; ") + "20 scenarios, " + std::to_string(patterns) +
             " evidence patterns";
  return v;
}

Verdict ac10_covariates() {
  Verdict v;
  int laws = 0;
  for (const auto& p : grid()) {
    for (auto kind : {CovariateKind::observed_identifies_one, CovariateKind::unobserved_extremal}) {
      CovariateResult r;
      try {
        r = covariate_construction(p, kind);
      } catch (const std::exception& e) {
        v.fail(law_str(p) + " " + std::string(to_string(kind)) + ": " + e.what());
        continue;
      }
      const auto e1 = r.model.p1.entries(), e0 = r.model.p0.entries(), target = p.entries();
      for (int k = 0; k < 4; ++k) {
        if (std::fabs(r.model.pi * e1[k] + (1 - r.model.pi) * e0[k] - target[k]) > 1e-12) {
          v.fail(law_str(p) + " mixture entry " + std::to_string(k));
        }
      }
      const double want = kind == CovariateKind::observed_identifies_one
                              ? 1.0
                              : simple_bounds(p, 1, 1).hi;
      if (std::fabs(r.pc.lo - want) > 1e-12 || std::fabs(r.pc.hi - want) > 1e-12) {
        v.fail(law_str(p) + " " + std::string(to_string(kind)) + " PC [" + str(r.pc.lo) + ", " +
               str(r.pc.hi) + "] vs " + str(want));
      }
    }
    ++laws;
  }
  if (v.pass) v.detail = std::to_string(laws) + " laws, both constructions";
  return v;
}

std::vector<std::vector<double>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(cell.empty() ? NAN : std::stod(cell));
    if (line.back() == ',') row.push_back(NAN);
    rows.push_back(row);
  }
  return rows;
}

Verdict ac11_bands() {
  Verdict v;
  const fs::path dir = fs::temp_directory_path() / "causabound_acceptance_bands";
  fs::remove_all(dir);
  std::ostringstream out, err;
  const int code = cli::run({"figures", "--tau", "0.2", "--rho=-0.4,-0.2,0,0.2,0.4,0.6", "--n-max",
                             "30", "--out", dir.string()},
                            out, err);
  if (code != 0) {
    v.fail("figures exited " + std::to_string(code) + ": " + err.str());
    return v;
  }
  // Columns: n, uLB, uUB, oLB, oUB, mLB, mUB.
  for (const char* label : {"-0.4", "-0.2", "0", "0.2", "0.4", "0.6"}) {
    const double rho = std::stod(label);
    const auto rows = read_csv(dir / (std::string("bands_rho_") + label + ".csv"));
    const std::string tag = std::string("rho=") + label;
    if (rows.size() != 29) {
      v.fail(tag + ": " + std::to_string(rows.size()) + " rows");
      continue;
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i][1] != rows[0][1]) v.fail(tag + ": blue lower not constant");
      if (!(rows[i][3] > rows[i - 1][3])) v.fail(tag + ": red lower not increasing");
      if (rho > 0 && !(rows[i][4] < rows[i - 1][4])) v.fail(tag + ": red upper not decreasing");
      if (!(rows[i][6] <= rows[i - 1][6])) v.fail(tag + ": green upper increases");
    }
    // Tending to 0: below 1% by n = 30. Staying away: equal to 1 throughout.
    const double last = rows.back()[6];
    if (rho != 0 && !(last <= 0.01)) v.fail(tag + ": green upper " + str(last) + " at n=30");
    if (rho == 0) {
      for (const auto& r : rows) {
        if (r[6] != 1.0) v.fail(tag + ": green upper below 1");
      }
    }
  }
  if (v.pass) v.detail = "6 rho values, n = 2..30";
  return v;
}

Verdict ac12_determinism(const std::string& tool) {
  Verdict v;
  const fs::path root = fs::temp_directory_path() / "causabound_acceptance_det";
  fs::remove_all(root);
  const fs::path config = root / "suite.conf";
  fs::create_directories(root);
  {
    std::ofstream f(config);
    f << "# shared by every command of the suite\n"
      << "step = 0.6,0.1\nstep = 0.7,-0.2\nstep = 0.8,0.05\n"
      << "evidence = 1?01\nsamples = 50000\nseed = 99\ninterior = 500\n";
  }
  const std::vector<std::string> suite = {
      "figures --tau 0.2 --rho=-0.4,-0.2,0,0.2,0.4,0.6 --n-max 30 --out {dir}/figures > {dir}/figures.log",
      "profile --tau 0.2 --rho 0.4 --n-max 200 --out {dir}/profile.csv",
      "extremal --tau 0.3333333333333333 --rho 0 --out {dir}/extremal.csv",
      "plan --step-tau 0.99 --step-rho 0 --n 120 --out {dir}/plan.csv > {dir}/plan.txt",
      "compare --out {dir}/compare.csv",
      "oracle --config {cfg} > {dir}/oracle.txt",
      "bounds --config {cfg} > {dir}/bounds.txt",
      "limits --tau 0.2 --rho=-0.3 > {dir}/limits.txt",
  };
  for (const char* name : {"a", "b"}) {
    const fs::path dir = root / name;
    fs::create_directories(dir);
    for (auto cmd : suite) {
      for (const auto& [key, value] : {std::pair<std::string, std::string>{"{dir}", dir.string()},
                                       {"{cfg}", config.string()}}) {
        for (auto pos = cmd.find(key); pos != std::string::npos; pos = cmd.find(key)) {
          cmd.replace(pos, key.size(), value);
        }
      }
      const std::string line = "\"" + tool + "\" " + cmd;
      if (std::system(line.c_str()) != 0) v.fail("command failed: " + cmd);
    }
  }
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
  };
  int files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const auto twin = root / "b" / fs::relative(entry.path(), root / "a");
    if (!fs::exists(twin) || slurp(entry.path()) != slurp(twin)) {
      v.fail(fs::relative(entry.path(), root / "a").string() + " differs");
    }
  }
  if (files < 20) v.fail("only " + std::to_string(files) + " output files");
  if (v.pass) v.detail = std::to_string(files) + " files byte-identical";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string tool = argc > 1 ? argv[1] : "causabound";
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"AC1 medicine example", ac1_medicine},
      {"AC2 prescription example", ac2_prescription},
      {"AC3 domino example", ac3_domino},
      {"AC4 extreme-bounds table attainment", ac4_extreme_table},
      {"AC5 sharpness oracle", ac5_sharpness},
      {"AC6 mixed-evidence worst case", ac6_mixed},
      {"AC7 limits", ac7_limits},
      {"AC8 doubling inequalities", ac8_doubling},
      {"AC9 Monte Carlo containment", ac9_monte_carlo},
      {"AC10 covariate baselines", ac10_covariates},
      {"AC11 homogeneous band figure", ac11_bands},
      {"AC12 determinism", [&] { return ac12_determinism(tool); }},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << " -- " << v.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
