#include <doctest.h>

#include <fstream>
#include <set>

#include "qfs/runner.hpp"
#include "qfs/scenario.hpp"
#include "qfs/version.hpp"

using namespace qfs;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// verdict-and-payload view of a report: everything except timing
Json stripped(const Report& report) {
  Json out = Json::array();
  for (const auto& c : report.checks) {
    Json j;
    j["name"] = c.name;
    j["kind"] = c.kind;
    j["status"] = c.status;
    j["detail"] = c.detail;
    out.push_back(std::move(j));
  }
  return out;
}

void strip_wall_ms(Json& j) {
  if (j.is_object()) {
    j.erase("wall_ms");
    for (auto& [k, v] : j.items()) strip_wall_ms(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_wall_ms(v);
  }
}

}  // namespace

TEST_CASE("scenario parsing") {
  Scenario s = parse_scenario(
      "scenario demo\n"
      "# comment\n"
      "check name=a kind=powers-mod base=2 modulus=27 k=9 expect=\"2,4,8,16,5,10,20,13,26\"\n"
      "check name=b kind=fedder tier=slow section=x p=2 vars=x,y poly=\"x*y\"\n");
  CHECK(s.name == "demo");
  REQUIRE(s.checks.size() == 2);
  CHECK(s.checks[0].get("k") == "9");
  CHECK(s.checks[1].tier == "slow");
  CHECK(s.checks[1].section == "x");
  CHECK(s.checks[1].get("poly") == "x*y");

  CHECK_THROWS(parse_scenario("check name=a kind=b\n"));  // missing header
  CHECK_THROWS(parse_scenario("scenario s\ncheck name=a kind=k\ncheck name=a kind=k\n"));
  CHECK_THROWS(parse_scenario("scenario s\ncheck name=a kind=k tier=weird\n"));
  CHECK_THROWS(parse_scenario("scenario s\ncheck name=a kind=k poly=\"x\n"));
  CHECK_THROWS(parse_scenario("scenario s\nbogus line\n"));
}

TEST_CASE("the bundled scenario matches the checked-in copy") {
  std::string from_file = read_file(std::string(QFS_SOURCE_DIR) + "/scenarios/paper.scenario");
  std::string builtin = builtin_paper_scenario();
  // the embedded literal may start with a newline introduced by the raw string
  if (!builtin.empty() && builtin.front() == '\n') builtin.erase(builtin.begin(), builtin.begin() + 1);
  CHECK(builtin == from_file);
}

TEST_CASE("the bundled scenario parses and covers the expected sections") {
  Scenario s = parse_scenario(builtin_paper_scenario());
  CHECK(s.name == "paper");
  std::set<std::string> sections;
  for (const auto& c : s.checks) sections.insert(c.section);
  for (const char* want : {"const-f-1", "const-f-5", "lambda", "const-f-2", "claims", "residues",
                           "chains", "extension", "smoothness"}) {
    CHECK(sections.count(want) == 1);
  }
}

TEST_CASE("run_check evaluates expectations") {
  CheckSpec good{"pm", "powers-mod", "", "default",
                 {{"base", "2"}, {"modulus", "27"}, {"k", "9"},
                  {"expect", "2,4,8,16,5,10,20,13,26"}}};
  CheckResult ok = run_check(good, Budget{});
  CHECK(ok.status == "pass");

  CheckSpec bad = good;
  bad.params["expect"] = "1,2,3";
  CHECK(run_check(bad, Budget{}).status == "fail");

  CheckSpec broken{"x", "fedder", "", "default", {{"p", "4"}, {"vars", "x"}, {"poly", "x"}}};
  CheckResult err = run_check(broken, Budget{});
  CHECK(err.status == "error");
  CHECK(err.detail["error"] == "NotPrime");

  CheckSpec unknown{"y", "no-such-kind", "", "default", {}};
  CHECK(run_check(unknown, Budget{}).status == "error");
}

TEST_CASE("budget exhaustion reports skipped-budget") {
  CheckSpec heavy{"h", "membership", "", "default",
                  {{"p", "2"}, {"vars", "x,y,z,w"}, {"poly", "x^4+x*y^3+y*z^3+z*w^3"},
                   {"power", "255"}, {"q", "512"}, {"expect", "member"}}};
  Budget tiny;
  tiny.max_term_pairs = 5;
  CHECK(run_check(heavy, tiny).status == "skipped-budget");
}

TEST_CASE("section and tier filtering") {
  Scenario s = parse_scenario(
      "scenario f\n"
      "check name=a section=one kind=powers-mod base=2 modulus=7 k=2 expect=2,4\n"
      "check name=b section=two kind=powers-mod base=2 modulus=7 k=2 expect=2,4\n"
      "check name=c section=two tier=slow kind=powers-mod base=2 modulus=7 k=2 expect=2,4\n");
  RunOptions opt;
  opt.section = "two";
  Report report = run_scenario(s, opt);
  REQUIRE(report.checks.size() == 1);
  CHECK(report.checks[0].name == "b");
  opt.tier = "full";
  CHECK(run_scenario(s, opt).checks.size() == 2);
  opt.section.clear();
  CHECK(run_scenario(s, opt).checks.size() == 3);
}

TEST_CASE("thread counts do not change verdicts or payloads") {
  Scenario s = parse_scenario(builtin_paper_scenario());
  // a representative slice that runs in well under a second
  Scenario slice;
  slice.name = s.name;
  for (const auto& c : s.checks) {
    if (c.section == "claims" || c.section == "residues" || c.section == "const-f-1" ||
        c.name == "k3-height" || c.name == "extension-m512") {
      slice.checks.push_back(c);
    }
  }
  REQUIRE(slice.checks.size() > 5);
  RunOptions serial;
  serial.threads = 1;
  RunOptions parallel;
  parallel.threads = 8;
  Json a = stripped(run_scenario(slice, serial));
  Json b = stripped(run_scenario(slice, parallel));
  strip_wall_ms(a);
  strip_wall_ms(b);
  CHECK(a == b);
}

TEST_CASE("report json carries the schema fields") {
  Scenario s = parse_scenario(
      "scenario tiny\n"
      "check name=a kind=powers-mod base=2 modulus=7 k=2 expect=2,4\n");
  Report report = run_scenario(s, RunOptions{});
  Json j = report.to_json();
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["tool_version"] == kToolVersion);
  CHECK(j["scenario"] == "tiny");
  REQUIRE(j["config"].is_object());
  REQUIRE(j["checks"].is_array());
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("kind"));
    CHECK(c.contains("status"));
    CHECK(c.contains("wall_ms"));
    CHECK(c.contains("detail"));
    std::string status = c["status"];
    CHECK((status == "pass" || status == "fail" || status == "error" ||
           status == "skipped-budget"));
  }
  CHECK(report.exit_code() == 0);

  Report failing = report;
  failing.checks[0].status = "fail";
  CHECK(failing.exit_code() == 1);
  failing.checks[0].status = "skipped-budget";
  CHECK(failing.exit_code() == 3);
  CHECK_THROWS(report.render("yaml"));
}

TEST_CASE("checks over extension fields build their ring from e and modulus") {
  CheckSpec spec{"ext", "delta", "", "default",
                 {{"p", "2"}, {"e", "3"}, {"modulus", "1,1,0,1"}, {"vars", "x,y"},
                  {"poly", "(g)*x + (g+1)*y"}, {"expect", "(g^2+g)*x*y"}}};
  CheckResult result = run_check(spec, Budget{});
  CHECK(result.status == "pass");
  CHECK(result.detail["result"] == "(g^2+g)*x*y");

  CheckSpec missing = spec;
  missing.params.erase("modulus");
  CHECK(run_check(missing, Budget{}).status == "error");
}

TEST_CASE("scan-family rows") {
  CheckSpec spec{"fam", "scan-family", "", "default",
                 {{"p", "2"}, {"vars", "x,y,z,w,t"}, {"f", "x^4+x*y^3+y*z^3+z*w^3"},
                  {"m", "510..512"}, {"cap", "4"}, {"n-max", "10"}}};
  CheckResult result = run_check(spec, Budget{});
  REQUIRE(result.status == "pass");
  const Json& rows = result.detail["rows"];
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["m"] == 510);
  CHECK(rows[0]["chain_n"] == 10);
  CHECK(rows[1]["chain_n"] == 10);
  CHECK(rows[2]["m"] == 512);
  CHECK(rows[2]["chain_n"].is_null());  // the family multiplier stops existing
  CHECK(rows[2]["levels_verdict"] == "at-least");
}
