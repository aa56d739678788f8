// Copyright 2026 The fdual Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file test_cli.cpp
 * @brief End-to-end tests of the `fdual` binary: payload contents, the
 * exit-code contract (0 pass / 1 failed check / 2 usage), output routing,
 * and byte-determinism across runs.
 *
 * The binary path is injected by the build as FDUAL_CLI_PATH.
 */

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fdual/json_io.hpp"
#include "fdual/primes.hpp"
#include "fdual/scalar.hpp"
#include "fdual/sl2.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using njson = nlohmann::json;
using namespace fdual;

/// Scratch directory for redirection files; removed on destruction.
struct TempDir {
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() /
           ("fdual_cli_test_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path path;
};

struct RunResult {
  int exitCode = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream file(p, std::ios::binary);
  std::ostringstream text;
  text << file.rdbuf();
  return text.str();
}

/// Run `fdual <args>` through the shell, capturing streams and exit code.
/// An optional `prefix` lands in front of the command (environment vars).
RunResult run(const TempDir& dir, const std::string& args,
              const std::string& prefix = "") {
  const fs::path outFile = dir.path / "stdout.txt";
  const fs::path errFile = dir.path / "stderr.txt";
  const std::string command = prefix + FDUAL_CLI_PATH " " + args + " > " +
                              outFile.string() + " 2> " + errFile.string();
  const int status = std::system(command.c_str());
  RunResult result;
  result.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(outFile);
  result.err = slurp(errFile);
  return result;
}

}  // namespace

TEST_CASE("tm emits the Todd denominator table deterministically") {
  TempDir dir;
  const auto first = run(dir, "tm --max 6");
  REQUIRE(first.exitCode == 0);
  const auto payload = njson::parse(first.out);
  CHECK(payload.at("max") == 6);
  const std::vector<std::string> expected{"1",   "2",    "12",   "24",
                                          "720", "1440", "60480"};
  REQUIRE(payload.at("values").size() == expected.size());
  for (std::size_t m = 0; m < expected.size(); ++m) {
    CHECK(payload.at("values").at(m).at("m") == m);
    CHECK(payload.at("values").at(m).at("value") == expected[m]);
  }

  const auto second = run(dir, "tm --max 6");
  CHECK(second.out == first.out);  // byte-identical across runs

  const auto text = run(dir, "tm --max 2 --format text");
  CHECK(text.exitCode == 0);
  CHECK(text.out == "m  T_m\n0  1\n1  2\n2  12\n");
}

TEST_CASE("usage errors exit 2 with help on stderr") {
  TempDir dir;
  const auto unknown = run(dir, "frobnicate");
  CHECK(unknown.exitCode == 2);
  CHECK(unknown.out.empty());
  CHECK(unknown.err.find("Usage") != std::string::npos);

  CHECK(run(dir, "tm --no-such-flag").exitCode == 2);
  CHECK(run(dir, "tm --max 9999").exitCode == 2);       // range check
  CHECK(run(dir, "fourier-check --g 9").exitCode == 2);  // model cap is 8
  CHECK(run(dir, "oracle-check --g 4").exitCode == 2);   // oracle cap is 3
  CHECK(run(dir, "verify").exitCode == 2);  // group without a leaf
  CHECK(run(dir, "verify pappas-shape --g 11 --max 11").exitCode == 2);
  CHECK(run(dir, "demo torsion --g 2 --p 9").exitCode == 2);  // not prime
  CHECK(run(dir, "tm --format yaml").exitCode == 2);

  const auto help = run(dir, "--help");
  CHECK(help.exitCode == 0);
  CHECK(help.out.find("suite") != std::string::npos);
}

TEST_CASE("verify identities reports four passing identities") {
  TempDir dir;
  const auto result = run(dir, "verify identities --rank 2 --max-deg 4");
  REQUIRE(result.exitCode == 0);
  const auto reports = njson::parse(result.out);
  REQUIRE(reports.is_array());
  REQUIRE(reports.size() == 4);
  for (const auto& report : reports) {
    CHECK(report.at("pass") == true);
    CHECK(report.at("residual").at("monomials").empty());
  }
  CHECK(reports.at(0).at("identity") == "exact-seq");
  CHECK(reports.at(3).at("identity") == "binom");
}

TEST_CASE("sl2 decompose recovers Sym^2 from a module file") {
  TempDir dir;
  const fs::path moduleFile = dir.path / "sym2.json";
  {
    const auto ring = arith::InvertedPrimeSet::dividing(arith::factorial(4));
    std::ofstream(moduleFile) << io::toJson(sl2::symPower(2, ring));
  }
  const auto result = run(dir, "sl2 decompose --input " + moduleFile.string());
  REQUIRE(result.exitCode == 0);
  const auto payload = njson::parse(result.out);
  const auto& top = payload.at("components").at(2);
  CHECK(top.at("n") == 2);
  CHECK(top.at("freeRank") == 1);
  CHECK(top.at("torsion").empty());

  CHECK(run(dir, "sl2 decompose --input " +
                     (dir.path / "missing.json").string())
            .exitCode == 2);

  // Well-shaped JSON whose maps fail [e,f] = h is a mathematical failure,
  // not a usage error.
  const fs::path badFile = dir.path / "bad.json";
  std::ofstream(badFile) << R"({
    "g": 1,
    "invertedPrimes": [2],
    "pieces": [
      {"freeRank": 1, "torsion": [], "weight": -1},
      {"freeRank": 1, "torsion": [], "weight": 1}
    ],
    "eMaps": [{"matrix": [[1]], "weight": -1}],
    "fMaps": [{"matrix": [[2]], "weight": 1}]
  })";
  const auto bad = run(dir, "sl2 decompose --input " + badFile.string());
  CHECK(bad.exitCode == 1);
  CHECK(bad.err.find("not a representation") != std::string::npos);
}

TEST_CASE("projector and check commands succeed at small sizes") {
  TempDir dir;
  const auto projectors = run(dir, "projectors --g 1 --d 0");
  REQUIRE(projectors.exitCode == 0);
  const auto table = njson::parse(projectors.out);
  CHECK(table.at("g") == 1);
  CHECK(table.at("nilIndex") == 3);
  // π_0 = ½Γ[0] − Γ[1] + ½Γ[2]: exact fractions survive the round trip.
  const auto& first = table.at("rows").at(0);
  CHECK(first.at("i") == 0);
  CHECK(first.at("n") == 0);
  CHECK(first.at("numerator") == "1");
  CHECK(first.at("denominator") == "2");

  CHECK(run(dir, "oracle-check --g 1").exitCode == 0);
  CHECK(run(dir, "fourier-check --g 8").exitCode == 0);
  CHECK(run(dir, "sl2 flek --max-n 3").exitCode == 0);
  CHECK(run(dir, "demo torsion --g 2 --p 7 --k 2").exitCode == 0);
}

TEST_CASE("output files resolve against FDUAL_OUTPUT_DIR") {
  TempDir dir;
  const fs::path outDir = dir.path / "payloads";
  const auto result = run(dir, "tm --max 4 --output tables/tm.json",
                          "FDUAL_OUTPUT_DIR=" + outDir.string() + " ");
  REQUIRE(result.exitCode == 0);
  CHECK(result.out.empty());  // payload went to the file, not stdout
  const auto onDisk = slurp(outDir / "tables" / "tm.json");
  const auto direct = run(dir, "tm --max 4");
  CHECK(onDisk == direct.out);
}

TEST_CASE("suite aggregates every check and exits zero") {
  TempDir dir;
  const auto result = run(dir, "suite --seed 9001");
  REQUIRE(result.exitCode == 0);
  CHECK(result.err.find("suite seed: 9001") != std::string::npos);
  const auto reports = njson::parse(result.out);
  REQUIRE(reports.is_array());
  CHECK(reports.size() >= 50);
  for (const auto& report : reports) CHECK(report.at("pass") == true);
}
