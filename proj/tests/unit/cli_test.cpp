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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "causabound/cli/config.hpp"
#include "causabound/cli/output.hpp"
#include "causabound/cli/run.hpp"

using namespace causabound;
using namespace causabound::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("causabound_cli_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void expect_single_error_line(const Result& r, const std::string& kind) {
  EXPECT_EQ(r.err.rfind("causabound: error: " + kind + ": ", 0), 0u) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
}

}  // namespace

TEST(Cli, MedicineExamplePrintsHalfToOne) {
  const auto r = invoke({"bounds", "--tau", "0.3333333", "--rho", "0", "--xy", "11"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("interval=[0.5, 1]"), std::string::npos) << r.out;
}

TEST(Cli, ConditionalsGiveTheSameLaw) {
  // p0 = Pr(Y=1 | X<-0) = 1/3, p1 = 2/3 is tau = 1/3, rho = 0.
  const auto a = key_values(invoke({"bounds", "--p0", "0.3333333333333333", "--p1",
                                    "0.6666666666666666"}).out);
  EXPECT_EQ(a.at("interval"), "[0.5, 1]");
}

TEST(Cli, DominoPlanTable) {
  const auto r = invoke({"plan", "--step-tau", "0.99", "--step-rho", "0", "--n", "120"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto kv = key_values(r.out);
  EXPECT_EQ(kv.at("best_k"), "60");
  std::istringstream in(r.out.substr(r.out.find("k,lb_if_one")));
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string k, lb, post, expected;
    std::getline(cells, k, ',');
    std::getline(cells, lb, ',');
    std::getline(cells, post, ',');
    std::getline(cells, expected, ',');
    EXPECT_NEAR(std::stod(expected), 0.4608048, 1e-7);
    if (k == "60") EXPECT_NEAR(std::stod(lb), 0.5002819, 1e-7);
    ++rows;
  }
  EXPECT_EQ(rows, 119);
}

TEST(Cli, ExplicitStepsMustComposeToTarget) {
  auto r = invoke({"bounds", "--tau", "0.2", "--rho", "0", "--step", "0.5,0", "--step", "0.4,0"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  r = invoke({"bounds", "--tau", "0.3", "--rho", "0", "--step", "0.5,0", "--step", "0.4,0"});
  EXPECT_EQ(r.code, kExitConfig);
  expect_single_error_line(r, "config");
}

TEST(Cli, EvidenceMustMatchChainLength) {
  const auto r = invoke({"bounds", "--step", "0.5,0", "--step", "0.4,0", "--evidence", "11"});
  EXPECT_EQ(r.code, kExitConfig);
  expect_single_error_line(r, "config");
}

TEST(Cli, TwoWaysOfGivingTheLawIsAnError) {
  const auto r = invoke({"bounds", "--tau", "0.2", "--rho", "0", "--p0", "0.1", "--p1", "0.3"});
  EXPECT_EQ(r.code, kExitConfig);
  expect_single_error_line(r, "config");
}

TEST(Cli, UnknownFlagAndSubcommand) {
  auto r = invoke({"bounds", "--tau", "0.2", "--rho", "0", "--frobnicate", "1"});
  EXPECT_EQ(r.code, kExitConfig);
  expect_single_error_line(r, "usage");
  r = invoke({"nonsense"});
  EXPECT_EQ(r.code, kExitConfig);
  expect_single_error_line(r, "usage");
}

TEST(Cli, InvalidLawIsAConfigError) {
  const auto r = invoke({"bounds", "--tau", "0.8", "--rho", "0.5"});
  EXPECT_EQ(r.code, kExitConfig);
  expect_single_error_line(r, "config");
}

TEST(Cli, ModuleFailuresExitWithThree) {
  // Extreme constructions need tau > 0.
  auto r = invoke({"extremal", "--tau=-0.3", "--rho", "0.1"});
  EXPECT_EQ(r.code, kExitModule);
  EXPECT_EQ(r.err.rfind("causabound: error: ", 0), 0u);
  // Observing M1 = 1 after X = 1 is impossible when X = 1 forces M1 = 0.
  r = invoke({"bounds", "--step=-0.5,-0.5", "--step", "0.5,0", "--evidence", "111"});
  EXPECT_EQ(r.code, kExitModule);
  expect_single_error_line(r, "null-event");
}

TEST(Cli, HelpExitsCleanly) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("figures"), std::string::npos);
}

TEST(CliConfig, FileThenFlags) {
  const auto dir = scratch("config");
  const auto path = dir / "run.conf";
  {
    std::ofstream f(path);
    f << "# two-step chain\n"
      << "step = 0.5, 0.1   # first\n"
      << "step = 0.6,-0.1\n"
      << "\n"
      << "evidence = 1?1\n"
      << "seed = 7\n";
  }
  RunConfig c;
  load_file(c, path.string());
  ASSERT_EQ(c.steps.size(), 2u);
  EXPECT_DOUBLE_EQ(c.steps[1].rho(), -0.1);
  EXPECT_EQ(*c.evidence, "1?1");
  EXPECT_EQ(resolve_seed(c, 1), 7u);

  // Flags replace the file's step list and evidence.
  const auto r = invoke({"bounds", "--config", path.string(), "--step", "0.5,0", "--step",
                         "0.4,0", "--evidence", "101"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(key_values(r.out).at("evidence"), "101");
  EXPECT_EQ(key_values(r.out).at("steps"), "0.5,0;0.4,0");
}

TEST(CliConfig, MalformedLinesNameTheLine) {
  RunConfig c;
  std::istringstream in("tau = 0.2\nrho 0.1\n");
  try {
    load(c, in, "cfg");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("cfg:2:", 0), 0u) << e.what();
  }
  std::istringstream unknown("colour = red\n");
  EXPECT_THROW(load(c, unknown, "cfg"), ConfigError);
  std::istringstream bad_number("tau = 0.2x\n");
  EXPECT_THROW(load(c, bad_number, "cfg"), ConfigError);
  std::istringstream bad_step("step = 0.9,0.5\n");
  EXPECT_THROW(load(c, bad_step, "cfg"), ConfigError);
}

TEST(CliConfig, SeedFallsBackToEnvironment) {
  RunConfig c;
  ::setenv("CAUSABOUND_SEED", "12345", 1);
  EXPECT_EQ(resolve_seed(c, 1), 12345u);
  c.seed = 9;
  EXPECT_EQ(resolve_seed(c, 1), 9u);
  ::setenv("CAUSABOUND_SEED", "abc", 1);
  c.seed.reset();
  EXPECT_THROW(resolve_seed(c, 1), ConfigError);
  ::unsetenv("CAUSABOUND_SEED");
  EXPECT_EQ(resolve_seed(c, 1), 1u);
}

TEST(CliConfig, EvidenceRoundTrips) {
  RunConfig c;
  apply(c, "evidence", "1?0?1");
  EXPECT_EQ(*c.evidence, "1?0?1");
  EXPECT_THROW(apply(c, "evidence", "1x1"), ConfigError);
}

TEST(CliOutput, NumberFormatting) {
  EXPECT_EQ(format_number(1.0 / 3.0, 9), "0.333333333");
  EXPECT_EQ(format_number(-0.0, 9), "0");
  EXPECT_EQ(format_number(1.0, 9), "1");
  EXPECT_EQ(format_number(0.5, 6), "0.5");
  EXPECT_EQ(format_number(123456789.0, 9), "123456789");
}

TEST(CliOutput, ProfileCsvSchema) {
  const TransitionMatrix law(0.2, 0.4);
  const auto csv = profile_csv({profile(law, 2), profile(law, 3)});
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,uLB,uUB,oLB,oUB,mLB,mUB");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 2), "2,");
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), 6);
  EXPECT_EQ(csv.back(), '\n');
  // oLB_2 for (0.2, 0.4) from the asymptotics suite.
  EXPECT_NE(line.find("0.269285"), std::string::npos) << line;
}

TEST(CliFigures, WritesOneCsvAndSvgPerRho) {
  const auto dir = scratch("figures");
  const auto r = invoke({"figures", "--tau", "0.2", "--rho=-0.4,-0.2,0,0.2,0.4,0.6", "--n-max", "30",
                         "--out", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* rho : {"-0.4", "-0.2", "0", "0.2", "0.4", "0.6"}) {
    const auto csv = slurp(dir / (std::string("bands_rho_") + rho + ".csv"));
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 30) << rho;  // header + n = 2..30
    const auto svg = slurp(dir / (std::string("bands_rho_") + rho + ".svg"));
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("#2ca02c"), std::string::npos);
  }
  EXPECT_TRUE(std::filesystem::exists(dir / "comparison.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "comparison.svg"));
}

TEST(CliFigures, ByteIdenticalAcrossRuns) {
  const auto a = scratch("det_a"), b = scratch("det_b");
  for (const auto& dir : {a, b}) {
    ASSERT_EQ(invoke({"figures", "--n-max", "20", "--out", dir.string()}).code, kExitOk);
  }
  for (const auto& entry : std::filesystem::directory_iterator(a)) {
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
  }
}

TEST(CliOracle, SimulationIsSeeded) {
  const std::vector<std::string> args = {"oracle",    "--step",    "0.6,0.1", "--step",
                                         "0.7,-0.2",  "--evidence", "1?1",    "--samples",
                                         "20000",     "--seed",    "11"};
  const auto a = invoke(args), b = invoke(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto kv = key_values(a.out);
  EXPECT_EQ(kv.at("sharpness.passed"), "true");
  EXPECT_EQ(kv.at("simulate.within_bounds"), "true");
}

TEST(CliCompare, RowsSkipInfeasiblePoints) {
  const auto r = invoke({"compare", "--tau", "0.5,0.9", "--rho", "0.2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  // tau = 0.9 with rho = 0.2 is outside the valid region.
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
}
