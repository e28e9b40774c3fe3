// Copyright 2026 cstarlab contributors
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

#include <catch2/catch_amalgamated.hpp>

#include "cstarlab/scenarios.hpp"

using namespace cstarlab;

namespace {

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("every registered scenario passes with default parameters") {
  for (const auto& name : scenario_names()) {
    ScenarioResult r = run_scenario({name, {}});
    INFO(name << "\n" << r.report);
    CHECK(r.pass);
    CHECK(r.name == name);
    CHECK(contains(r.report, "RESULT: PASS"));
    CHECK(!contains(r.report, "[FAIL]"));
  }
}

TEST_CASE("scenario registry lists six scenarios and rejects strangers") {
  CHECK(scenario_names().size() == 6);
  CHECK_THROWS_AS(run_scenario({"t2_in_m3", {}}), UnknownScenario);
  CHECK_THROWS_AS(run_scenario({"", {}}), UnknownScenario);
}

TEST_CASE("scenario parameters: overrides apply, unknown keys rejected") {
  ScenarioResult r = run_scenario({"t2_twist_chain", {{"grid", 21}}});
  CHECK(r.pass);
  // Header plus two gram eigenvalues per grid point.
  CHECK(count_lines(r.csv) == 1 + 2 * 21);
  CHECK(contains(r.report, "grid = 21"));

  CHECK_THROWS_AS(run_scenario({"t2_twist_chain", {{"gird", 21}}}),
                  ParseError);
  CHECK_THROWS_AS(run_scenario({"t2_in_m2", {{"s", 0.5}}}), ParseError);
  CHECK_THROWS_AS(run_scenario({"t2_twist_chain", {{"grid", 1}}}),
                  ParseError);
  CHECK_THROWS_AS(run_scenario({"t2_twist_chain", {{"grid", 10.5}}}),
                  ParseError);
  CHECK_THROWS_AS(run_scenario({"t2_twist_chain", {{"s", 1.5}}}), ParseError);
  CHECK_THROWS_AS(run_scenario({"semidirichlet_probe", {{"t", 0.0}}}),
                  ParseError);
}

TEST_CASE("triangular-in-M2 scenario report states the classification") {
  ScenarioResult r = run_scenario({"t2_in_m2", {}});
  CHECK(r.pass);
  CHECK(contains(r.report, "shilov ideal: empty"));
  CHECK(contains(r.report, "envelope target: [2]"));
  CHECK(contains(r.report, "dirichlet: yes"));
  CHECK(r.csv.empty());
}

TEST_CASE("compressed-direct-sum scenario finds the scalar Shilov block") {
  ScenarioResult r = run_scenario({"pi_oplus_id_t2", {}});
  CHECK(r.pass);
  CHECK(contains(r.report, "shilov ideal: block 1"));
  CHECK(contains(r.report, "envelope target: [2]"));
  CHECK(contains(r.report, "extended dimension: 4"));
  CHECK(contains(r.report,
                 "summary: Shilov = block 1; envelope = M2; A+I = C(+)T2; "
                 "QN=NQ=id: PASS"));
}

TEST_CASE("twist chain scenario sweeps the corner gram spectrum") {
  ScenarioResult r = run_scenario({"t2_twist_chain", {}});
  CHECK(r.pass);
  CHECK(contains(r.report, "s = 0.5, grid = 101"));
  CHECK(contains(r.report, "summary: spectrum of |A_s| within [0.25, 1]"));
  REQUIRE(count_lines(r.csv) == 1 + 2 * 101);
  CHECK(r.csv.rfind("t,eigenvalue\n", 0) == 0);
  // First grid point is t = 0: corner [[s, 0], [0, s]], gram s^2 I.
  CHECK(contains(r.csv, "0,0.25\n"));
}

TEST_CASE("finite Toeplitz scenario reports fingerprints and incomparability") {
  ScenarioResult r = run_scenario({"toeplitz_finite", {}});
  CHECK(r.pass);
  CHECK(contains(r.report, "n = 8"));
  CHECK(contains(r.report, "fingerprint {0, 0.09, 1}"));
  CHECK(contains(r.report, "fingerprint {0, 0.36, 1}"));
  CHECK(contains(r.report, "fingerprint {0, 0.81, 1}"));
  CHECK(contains(r.report,
                 "covers at z = 0.3 and z = 0.6 are incomparable"));
  REQUIRE(count_lines(r.csv) == 1 + 9);
  CHECK(r.csv.rfind("z_re,z_im,fingerprint_value\n", 0) == 0);
}

TEST_CASE("semi-dirichlet probe scenario splits the twisted corner") {
  ScenarioResult r = run_scenario({"semidirichlet_probe", {}});
  CHECK(r.pass);
  CHECK(contains(r.report, "phi semi-dirichlet: yes"));
  CHECK(contains(r.report, "phi' semi-dirichlet: no"));
  CHECK(contains(r.report, "triangular algebra in M2 is dirichlet"));
}

TEST_CASE("lattice roundtrip scenario certifies both compositions") {
  ScenarioResult r = run_scenario({"lattice_maps_roundtrip", {}});
  CHECK(r.pass);
  CHECK(contains(r.report, "Q(N(generated)) equivalent to generated"));
  CHECK(contains(r.report, "Q(N(envelope)) equivalent to envelope"));
  CHECK(contains(r.report, "N(Q(generated)) equivalent to generated"));
  CHECK(contains(r.report, "N(Q(model)) equivalent to model"));
  CHECK(contains(r.report,
                 "R(N(envelope)) equals join(envelope, generated)"));
  CHECK(contains(r.report,
                 "restriction dominates quotient on the generated cover"));
  REQUIRE(count_lines(r.csv) == 1 + 6);
  CHECK(r.csv.rfind("check,residual\n", 0) == 0);
}

TEST_CASE("scenario runs are byte-identical across repeats") {
  std::string first, second;
  for (std::string* sink : {&first, &second}) {
    for (const ScenarioResult& r : run_all_scenarios()) {
      *sink += r.report;
      *sink += r.csv;
    }
  }
  CHECK(first == second);
  CHECK(!first.empty());
}
