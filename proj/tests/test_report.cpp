#include <doctest.h>

#include <nlohmann/json.hpp>

#include "vlab/errors.hpp"
#include "vlab/report.hpp"
#include "vlab/suites.hpp"

using namespace vlab;

TEST_CASE("digest is stable and input sensitive") {
  CHECK(fnv1a_digest("abc") == fnv1a_digest("abc"));
  CHECK(fnv1a_digest("abc") != fnv1a_digest("abd"));
  CHECK(fnv1a_digest("").size() == 16);
}

TEST_CASE("check records pass on |value| <= tolerance") {
  CHECK(make_check("a", "s", "d", 0.0, 0.0).pass);
  CHECK(make_check("a", "s", "d", 1e-12, 1e-10).pass);
  CHECK(!make_check("a", "s", "d", 2e-10, 1e-10).pass);
  CHECK(!make_check("a", "s", "d", std::nan(""), 1.0).pass);
}

TEST_CASE("report json round trip") {
  VerificationReport report;
  report.config_digest = "deadbeef00000000";
  report.timestamp = utc_timestamp();
  report.checks.push_back(make_check("b.second", "statement two", "22", 0.5, 1.0));
  report.checks.push_back(make_check("a.first", "statement one", "11", 2.0, 1.0));
  report.sort_by_id();
  CHECK(report.checks.front().check_id == "a.first");
  CHECK(report.passed() == 1);
  CHECK(report.failed() == 1);

  nlohmann::json j = report_to_json(report);
  VerificationReport back = report_from_json(j);
  CHECK(back.tool_version == report.tool_version);
  CHECK(back.checks.size() == 2);
  CHECK(back.checks[0].value == 2.0);
  CHECK(back.checks[0].pass == false);
  CHECK(back.checks[1].value == 0.5);
  CHECK(back.checks[1].pass == true);
}

TEST_CASE("malformed report json raises ConfigError") {
  nlohmann::json j = {{"tool_version", "x"}};
  CHECK_THROWS_AS(report_from_json(j), ConfigError);
}

TEST_CASE("symbolic suite is deterministic for a fixed seed") {
  SymbolicSuiteConfig cfg;
  cfg.cases = 12;
  auto a = run_symbolic_suite(cfg);
  auto b = run_symbolic_suite(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].check_id == b[k].check_id);
    CHECK(a[k].value == b[k].value);
    CHECK(a[k].inputs_digest == b[k].inputs_digest);
    CHECK(a[k].pass);
  }
}
