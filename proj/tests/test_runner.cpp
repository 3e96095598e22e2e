#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sharpconst/errors.hpp"
#include "sharpconst/runner.hpp"

using namespace sharpconst;
using nlohmann::json;

namespace {

json base(const std::string& task) {
  return {{"schema", 1}, {"task", task}, {"p", 2}, {"m", 1}, {"body", "box:1"}, {"n", {{"min", 1}, {"max", 2}}}};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("n ranges") {
  NRange r{5, 15, 2, Parity::All};
  CHECK(r.values() == std::vector<int>{5, 7, 9, 11, 13, 15});
  r = NRange{1, 6, 1, Parity::Even};
  CHECK(r.values() == std::vector<int>{2, 4, 6});
  auto doc = base("sweep-M");
  doc["n"] = {{"min", 2}, {"max", 2}, {"parity", "odd"}};
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("config validation names the field") {
  auto expect_error = [](const json& doc, const std::string& needle) {
    try {
      parse_config(doc);
      FAIL("accepted: " << doc.dump());
    } catch (const ConfigError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    }
  };
  auto doc = base("sweep-M");
  doc["schema"] = 2;
  expect_error(doc, "schema");
  doc = base("sweep-Q");
  expect_error(doc, "task");
  doc = base("sweep-M");
  doc["p"] = "infinity";
  expect_error(doc, "'p'");
  doc = base("sweep-M");
  doc["body"] = "ball:oops";
  expect_error(doc, "oops");
  doc = base("sweep-M");
  doc["frobnicate"] = 1;
  expect_error(doc, "frobnicate");
  doc = base("sweep-M");
  doc["m"] = 2;
  doc["body"] = "ball:1";
  doc["N"] = 1;
  expect_error(doc, "weights");
  doc = base("sweep-M");
  doc["format"] = "xml";
  expect_error(doc, "format");
}

TEST_CASE("sweep rows") {
  auto rep = run(parse_config(base("sweep-M")));
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].value == doctest::Approx(0.70710678).epsilon(1e-7));
  CHECK(rep.rows[1].value == doctest::Approx(0.75));

  auto doc = base("sweep-M");
  doc["p"] = "inf";
  doc["n"] = {{"min", 1}, {"max", 6}};
  rep = run(parse_config(doc), 2);
  REQUIRE(rep.rows.size() == 6);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].n == static_cast<int>(i) + 1);
    CHECK(rep.rows[i].value == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("limit task") {
  auto doc = base("limit-E");
  doc["p"] = "inf";
  doc["N"] = 1;
  doc["stability_check"] = false;
  doc["n"] = {{"min", 5}, {"max", 41}, {"step", 2}, {"parity", "odd"}};
  const auto rep = run(parse_config(doc));
  REQUIRE(rep.limit.has_value());
  CHECK(rep.limit->estimate == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.rows.size() == 19);
}

TEST_CASE("failed rows do not abort the sweep") {
  auto doc = base("sweep-N");
  doc["p"] = "inf";
  const auto rep = run(parse_config(doc));
  REQUIRE(rep.rows.size() == 2);
  for (const auto& r : rep.rows) {
    CHECK(r.failed);
    CHECK(r.method == "failed");
    CHECK(std::isnan(r.value));
  }
}

TEST_CASE("csv and json agree") {
  const auto rep = run(parse_config(base("sweep-M")));
  const auto csv = to_csv(rep);
  CHECK(csv.rfind("n,p,N,m,body,kind,value,method,stability_delta,seed,runtime_ms\n", 0) == 0);
  CHECK(count_lines(csv) == 1 + rep.rows.size());
  const auto j = to_json(rep);
  CHECK(j["rows"].size() == rep.rows.size());
  CHECK(j["config"] == base("sweep-M"));
  CHECK(j["version"] == tool_version());
  for (const auto& row : j["rows"]) CHECK(row.contains("stability_delta"));
}

TEST_CASE("bodies with commas are quoted") {
  auto doc = base("sweep-M");
  doc["m"] = 2;
  doc["body"] = "box:1,2";
  doc["n"] = {{"min", 1}, {"max", 1}};
  const auto csv = to_csv(run(parse_config(doc)));
  CHECK(csv.find("\"box:1,2\"") != std::string::npos);
}

TEST_CASE("reruns are bit-identical") {
  auto doc = base("sweep-M");
  doc["p"] = 3;
  doc["n"] = {{"min", 1}, {"max", 5}};
  const auto cfg = parse_config(doc);
  CHECK(to_csv(run(cfg)) == to_csv(run(cfg, 3)));
  CHECK(to_json(run(cfg)).dump() == to_json(run(cfg)).dump());
}

TEST_CASE("atomic writes") {
  const auto dir = std::filesystem::temp_directory_path() / "sharpconst_runner_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "out.csv").string();
  write_atomic(path, "a\n");
  write_atomic(path, "b\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "b\n");
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 1);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(write_atomic("/nonexistent-dir/x.csv", "x"), ConfigError);
}

TEST_CASE("verification suites") {
  CHECK(suite_names().size() == 6);
  CHECK_THROWS_AS(verify_suite("nope"), ConfigError);
  for (const auto& name : {"triangle", "markov", "coefficient-bounds"}) {
    const auto r = verify_suite(name);
    CHECK_MESSAGE(r.passed, name);
  }
  auto doc = json{{"schema", 1}, {"task", "verify-inequalities"}, {"suites", {"triangle"}}};
  const auto rep = run(parse_config(doc));
  REQUIRE(rep.suites.size() == 1);
  CHECK_FALSE(rep.verification_failed());
}
