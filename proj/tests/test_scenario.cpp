#include "common.hpp"
#include "morita/scenario.hpp"

#include <doctest.h>

#include <json.hpp>

using namespace testing_support;

namespace {

const std::string dir = SCENARIO_DIR;

std::string with_checks(const std::string& checks, const std::string& algebras = R"([{"name": "M2", "kind": "matrix", "n": 2}])") {
  return R"({"schema": "morita-scenario/1", "name": "t", "algebras": )" + algebras + R"(, "checks": )" + checks + "}";
}

}  // namespace

TEST_CASE("minimal scenario is accepted") {
  auto s = parse_scenario(dir + "/minimal.json");
  CHECK(s.name == "minimal");
  REQUIRE(s.checks.size() == 1);
  CHECK(s.checks[0].kind == "main_theorem");
  CHECK(s.checks[0].seeds == 5);
  auto r = run(s);
  CHECK(r.passed());
  CHECK(r.checks[0].report.instances.size() == 5);
}

TEST_CASE("malformed scenarios are rejected") {
  CHECK_THROWS_AS(parse_scenario_text(with_checks(R"([{"kind": "main_theorm", "algebra": "M2"}])")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario_text(with_checks(R"([{"kind": "main_theorem", "algebra": "M3"}])")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario_text(with_checks(R"([{"kind": "main_theorem", "algebra": "M2", "extra": 1}])")),
                  ScenarioError);
  CHECK_THROWS_AS(parse_scenario_text(with_checks(R"([{"kind": "lunts", "algebra": "M2", "n_max": 7}])")),
                  ScenarioError);
  CHECK_THROWS_AS(parse_scenario_text(with_checks(R"([{"kind": "main_theorem", "algebra": "M2", "seeds": -1}])")),
                  ScenarioError);
  CHECK_THROWS_AS(parse_scenario_text(with_checks("[]", R"([{"name": "x", "kind": "structure", "dim": 1, "mult": [2], "unit": [1]}])")),
                  ScenarioError);
  CHECK_THROWS_AS(parse_scenario_text(R"({"schema": "morita-scenario/2", "name": "t"})"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(dir + "/no_such_file.json"), ScenarioError);
}

TEST_CASE("cap violations are named") {
  try {
    parse_scenario_text(with_checks(R"([{"kind": "hochschild", "algebra": "M2", "n_max": 9}])"));
    FAIL("accepted");
  } catch (const ScenarioError& e) {
    std::string m = e.what();
    CHECK(m.find("checks[0].n_max") != std::string::npos);
    CHECK(m.find("cap 6") != std::string::npos);
  }
  auto s = parse_scenario_text(with_checks("[]"));
  RunOptions opt;
  opt.degree_bound = 7;
  CHECK_THROWS_AS(run(s, opt), ScenarioError);
}

TEST_CASE("syntax errors carry a line number") {
  try {
    parse_scenario(dir + "/bad_syntax.json");
    FAIL("accepted");
  } catch (const ScenarioError& e) {
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }
}

TEST_CASE("empty check list gives an empty passing report") {
  auto r = run(parse_scenario_text(with_checks("[]")));
  CHECK(r.checks.empty());
  CHECK(r.passed());
  auto j = nlohmann::json::parse(emit(r, Format::json));
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["verdict"] == "pass");
  CHECK(j["checks"].empty());
}

TEST_CASE("refusals are skipped with a reason") {
  auto s = parse_scenario_text(
      with_checks(R"([{"kind": "main_theorem", "algebra": "D", "seeds": 2}, {"kind": "umbra", "algebra": "D"}])",
                  R"([{"name": "D", "kind": "truncated_polynomial", "n": 2}])"));
  auto r = run(s);
  CHECK(r.passed());
  CHECK(r.skipped() == 2);
  for (const auto& c : r.checks) {
    CHECK(c.report.verdict == Verdict::skipped);
    CHECK(c.report.reason.find("separable") != std::string::npos);
  }
  CHECK(emit(r, Format::human).find("skipped (") != std::string::npos);
}

TEST_CASE("failures carry witnesses and exit code 1 semantics") {
  auto r = run(parse_scenario(dir + "/failing.json"));
  CHECK_FALSE(r.passed());
  auto human = emit(r, Format::human);
  CHECK(human.find("failed: dim HH_1") != std::string::npos);
  CHECK(human.find("exit code 1") != std::string::npos);
  auto j = nlohmann::json::parse(emit(r, Format::json));
  CHECK(j["exit_code"] == 1);
  CHECK(j["checks"][0]["failures"][0]["left"] == "1");
  CHECK(j["checks"][0]["failures"][0]["right"] == "0");
}

TEST_CASE("reports follow declaration order and are deterministic") {
  auto s = parse_scenario(dir + "/small.json");
  auto a = run(s);
  clear_tensor_cache();
  clear_shadow_cache();
  auto b = run(parse_scenario(dir + "/small.json"));
  REQUIRE(a.checks.size() == s.checks.size());
  for (std::size_t i = 0; i < s.checks.size(); ++i) CHECK(a.checks[i].kind == s.checks[i].kind);
  for (auto f : {Format::human, Format::json, Format::tsv}) CHECK(emit(a, f, false) == emit(b, f, false));
  CHECK(a.passed());
  CHECK(a.skipped() == 1);
}

TEST_CASE("--seed moves seeded checks only when they set no seed") {
  auto s = parse_scenario_text(with_checks(
      R"([{"kind": "mate", "algebra": "M2", "seeds": 2}, {"kind": "mate", "algebra": "M2", "seeds": 2, "first_seed": 1}])"));
  RunOptions opt;
  opt.seed = 40;
  auto r = run(s, opt);
  CHECK(r.checks[0].report.instances[0].seed == 40);
  CHECK(r.checks[1].report.instances[0].seed == 1);
}

TEST_CASE("character tables as tsv") {
  auto s = parse_scenario(dir + "/small.json");
  auto t = emit(run_characters(s), Format::tsv);
  CHECK(t.rfind("g\th\tvalue\n", 0) == 0);
  CHECK(t.find("0\t0\t3\n") != std::string::npos);
  CHECK_THROWS_AS(run_characters(s, "nope"), ScenarioError);
}

TEST_CASE("hh report rows") {
  auto s = parse_scenario(dir + "/small.json");
  auto r = run_hochschild(s, 4);
  CHECK(r.passed());
  REQUIRE(r.entries.size() == 3);
  CHECK(r.entries[2].rows.size() == 4);
  CHECK(r.entries[2].rows[3].dim == 1);
  CHECK(emit(r, Format::tsv).rfind("algebra\tdegree\tdim\texact\n", 0) == 0);
  CHECK_THROWS_AS(run_hochschild(s, 0), ScenarioError);
}

TEST_CASE("scalars print as exact fractions or residues") {
  auto s = parse_scenario_text(R"({"schema": "morita-scenario/1", "name": "t",
    "actions": [{"name": "c2", "kind": "regular_permutation", "group": {"cyclic": 2}, "field": {"prime": 3}}]})");
  auto t = emit(run_characters(s), Format::tsv);
  CHECK(t.find("2 mod 3") != std::string::npos);
}
