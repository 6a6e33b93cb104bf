// Copyright 2026 The qdca Authors
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


#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qdca/cli/app.hpp"
#include "qdca/cli/config.hpp"
#include "qdca/cli/output.hpp"

namespace fs = std::filesystem;
using namespace qdca::cli;

namespace {
struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qdca");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// A fresh, empty directory per call.
fs::path scratch(const std::string& tag) {
  static int counter = 0;
  const fs::path p = fs::temp_directory_path() / ("qdca_cli_" + std::to_string(::getpid()) + "_" +
                                                  std::to_string(counter++) + "_" + tag);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

std::size_t file_count(const fs::path& dir) {
  if (!fs::exists(dir)) return 0;
  return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator()));
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}
}  // namespace

TEST_SUITE("cli") {
TEST_CASE("list parsing") {
  CHECK(parse_list("1,2,3") == std::vector<double>{1, 2, 3});
  CHECK(parse_list("-3,-2,...,3") == std::vector<double>{-3, -2, -1, 0, 1, 2, 3});
  CHECK(parse_list("0:0.5:2") == std::vector<double>{0, 0.5, 1, 1.5, 2});
  CHECK(parse_list(" 4 ") == std::vector<double>{4});
  CHECK(parse_list("").empty());
  CHECK_THROWS_AS(parse_list("1,x"), ConfigError);
  CHECK_THROWS_AS(parse_list("0:0:1"), ConfigError);
  CHECK_THROWS_AS(parse_list("0:1"), ConfigError);
}

TEST_CASE("config parsing and validation") {
  const RunConfig c = RunConfig::parse(
      "seed = 7\n# comment\n[solver]\nn_max = 8 ; trailing\nL_nm = 800\n[effective]\nfrom_solver = true\n");
  CHECK(c.seed() == 7u);
  CHECK(c.get_int("solver", "n_max", 0) == 8);
  CHECK(c.get_double("solver", "L_nm", 0.0) == 800.0);
  CHECK(c.get_bool("effective", "from_solver", false));
  CHECK(c.get_double("gate", "d_nm", 3600.0) == 3600.0);
  CHECK(RunConfig::parse("").seed() == 20140613u);
  CHECK_THROWS_AS(RunConfig::parse("[solver]\nnmax = 3\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("[nosuch]\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("[solver]\nn_max = three\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("[solver]\nn_max\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("[solver\n"), ConfigError);
  try {
    RunConfig::parse("[gate]\nspacing = 3\n");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("spacing") != std::string::npos);
  }
  CHECK_THROWS_AS(solver_from(RunConfig::parse("[solver]\nn_max = 1\n")), ConfigError);
  CHECK_THROWS_AS(effective_literals(RunConfig::parse("[effective]\np_S = 0.7\n")), ConfigError);
}

TEST_CASE("number formatting round-trips") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 10000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(3.0) == "3");
}

TEST_CASE("csv table and atomic writes") {
  CsvTable t({"a", "b"});
  t.add_row({"1", "2"});
  CHECK(t.str() == "a,b\n1,2\n");
  CHECK_THROWS_AS(t.add_row({"1"}), std::invalid_argument);

  const fs::path dir = scratch("atomic");
  fs::create_directories(dir);
  atomic_write(dir / "x.txt", "first");
  atomic_write(dir / "x.txt", "second");
  CHECK(slurp(dir / "x.txt") == "second");
  CHECK(file_count(dir) == 1u);  // no temporaries left behind
  CHECK(nlohmann::json::parse(json_text({{"k", 1}}))["schema_version"] == 1);
  fs::remove_all(dir);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"--help"}).code == kExitOk);
  CHECK(invoke({}).code == kExitConfig);
  CHECK(invoke({"frobnicate"}).code == kExitConfig);
  const Result bad_flag = invoke({"gate", "--spacing", "3"});
  CHECK(bad_flag.code == kExitConfig);
  CHECK(bad_flag.err.find("spacing") != std::string::npos);

  const fs::path dir = scratch("badkey");
  fs::create_directories(dir);
  write_text(dir / "run.cfg", "[gate]\nd_um = 3.6\n");
  const fs::path out = dir / "out";
  const Result bad_key = invoke({"--config", (dir / "run.cfg").string(), "--out", out.string(), "gate"});
  CHECK(bad_key.code == kExitConfig);
  CHECK(bad_key.err.find("d_um") != std::string::npos);
  CHECK(file_count(out) == 0u);

  // An unreachable eigensolver tolerance is a numerical failure, not a config error.
  write_text(dir / "strict.cfg", "[solver]\nn_max = 2\neigen_tol = 1e-30\n");
  const Result strict = invoke({"--config", (dir / "strict.cfg").string(), "--out", out.string(), "solve"});
  CHECK(strict.code == kExitNonConvergence);
  CHECK(file_count(out) == 0u);
  fs::remove_all(dir);
}

TEST_CASE("empty sweep writes nothing") {
  const fs::path out = scratch("empty");
  const Result r = invoke({"--out", out.string(), "sweep", "--target", "gate", "--param", "d_nm", "--values", ""});
  CHECK(r.code == kExitConfig);
  CHECK(file_count(out) == 0u);
  CHECK(invoke({"--out", out.string(), "sweep", "--target", "gate", "--param", "nosuch", "--values", "1"}).code ==
        kExitConfig);
  CHECK(file_count(out) == 0u);
}

TEST_CASE("artifact headers") {
  const fs::path out = scratch("headers");
  REQUIRE(invoke({"--out", out.string(), "effective"}).code == kExitOk);
  CHECK(first_line(out / "effective.csv") == "V_ueV,E_S1,E_S2,E_Tv,E_Th,theta_rad,J_ueV");
  REQUIRE(invoke({"--out", out.string(), "filter", "--n-max", "3"}).code == kExitOk);
  CHECK(first_line(out / "filter.csv") == "t_ns,P_ac,P_bd,norm");
  REQUIRE(invoke({"--out", out.string(), "solve", "--n-max", "3", "--Vs", "-1,0,1"}).code == kExitOk);
  const std::string head = first_line(out / "spectrum.csv");
  CHECK(head.rfind("V_ueV,", 0) == 0);
  REQUIRE(invoke({"--out", out.string(), "materials"}).code == kExitOk);
  const auto m = nlohmann::json::parse(slurp(out / "materials.json"));
  CHECK(m["schema_version"] == 1);
  CHECK(m["Delta0_temperature_mK"].get<double>() == doctest::Approx(232.09).epsilon(1e-4));
  fs::remove_all(out);
}

TEST_CASE("reruns are byte-identical") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  for (const fs::path& o : {a, b}) {
    REQUIRE(invoke({"--out", o.string(), "--seed", "5", "gate", "--u0", "2", "--u1", "1"}).code == kExitOk);
    REQUIRE(invoke({"--out", o.string(), "--seed", "5", "filter", "--n-max", "3"}).code == kExitOk);
    REQUIRE(invoke({"--out", o.string(), "--seed", "5", "--jobs", o == a ? "1" : "3", "sweep", "--target", "gate",
                    "--param", "d_nm", "--values", "2000:1000:6000"}).code == kExitOk);
  }
  for (const auto& entry : fs::directory_iterator(a)) {
    INFO(entry.path().filename().string());
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
  }
  CHECK(file_count(a) == file_count(b));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("single-value sweep equals the direct invocation") {
  const fs::path out = scratch("single");
  REQUIRE(invoke({"--out", out.string(), "gate", "--d", "4200"}).code == kExitOk);
  REQUIRE(invoke({"--out", out.string(), "sweep", "--target", "gate", "--param", "d_nm", "--values", "4200"}).code ==
          kExitOk);
  const auto g = nlohmann::json::parse(slurp(out / "gate.json"));
  std::ifstream in(out / "sweep_gate_d_nm.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  std::string extra;
  CHECK_FALSE(static_cast<bool>(std::getline(in, extra)));
  const std::string expect = "4200,ok," + format_double(g["u0"].get<double>()) + "," +
                             format_double(g["u1"].get<double>()) + "," + format_double(g["t_R"].get<double>()) + "," +
                             format_double(g["t_I"].get<double>()) + "," +
                             format_double(g["total_gate_time_ns"].get<double>()) + "," +
                             format_double(g["concurrence"].get<double>()) + "," +
                             format_double(g["fidelity_vs_exact"].get<double>());
  CHECK(row == expect);
  fs::remove_all(out);
}

TEST_CASE("failing sweep points become status rows") {
  const fs::path out = scratch("status");
  REQUIRE(invoke({"--out", out.string(), "sweep", "--target", "gate", "--param", "d_nm", "--values", "3000,200,5000"})
              .code == kExitOk);
  std::ifstream in(out / "sweep_gate_d_nm.csv");
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  REQUIRE(lines.size() == 4u);
  CHECK(lines[1].rfind("3000,ok,", 0) == 0);
  CHECK(lines[2].rfind("200,error", 0) == 0);
  CHECK(lines[3].rfind("5000,ok,", 0) == 0);
  fs::remove_all(out);
}

TEST_CASE("config from the environment and the exchange sweep") {
  const fs::path dir = scratch("env");
  fs::create_directories(dir);
  const fs::path out = dir / "results";
  write_text(dir / "env.cfg", "output_dir = " + out.string() + "\n[effective]\nDelta0 = 25\n");
  ::setenv("QDOT_CONFIG", (dir / "env.cfg").string().c_str(), 1);
  const Result r = invoke({"sweep", "--target", "effective", "--param", "V_over_Delta0", "--values", "-3:1:3"});
  ::unsetenv("QDOT_CONFIG");
  REQUIRE(r.code == kExitOk);
  const fs::path csv = out / "sweep_effective_V_over_Delta0.csv";
  REQUIRE(fs::exists(csv));
  std::ifstream in(csv);
  int rows = -1;
  for (std::string l; std::getline(in, l);) ++rows;
  CHECK(rows == 7);
  fs::remove_all(dir);
}
}
