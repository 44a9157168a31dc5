#include <clocale>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "tcstab/output.hpp"
#include "tcstab/scenarios.hpp"

using namespace tcstab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("tcstab-output-test-" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-2.5) == "-2.5");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(format_number(1e-7) == "9.9999999999999995e-08");
  CHECK(format_number(std::exp(4.0)) == "54.598150033144236");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -1.2345678901234567e-8})
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
}

TEST_CASE("number formatting ignores the locale") {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8")) CHECK(format_number(0.5) == "0.5");
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST_CASE("CSV layout and round trip") {
  const fs::path d = scratch("csv");
  fs::create_directories(d);
  CsvTable t({"name", "k", "value"});
  t.add({std::string("alpha"), std::int64_t{3}, 0.1});
  t.add({std::string("beta"), std::int64_t{-1}, 2.0});
  CHECK_THROWS(t.add({1.0}));
  write_csv((d / "t.csv").string(), t, "resolved params here");
  CHECK(slurp(d / "t.csv") == "# resolved params here\nname,k,value\nalpha,3,0.10000000000000001\nbeta,-1,2\n");
  const CsvData r = read_csv((d / "t.csv").string());
  CHECK(r.comment == "resolved params here");
  CHECK(r.columns == std::vector<std::string>{"name", "k", "value"});
  CHECK(r.column("value") == 2);
  CHECK(r.column("missing") == -1);
  CHECK(r.numbers("value") == std::vector<double>{0.1, 2.0});
  fs::remove_all(d);
}

TEST_CASE("checks") {
  const Check a = check_le("a", 1.0, 2.0);
  CHECK(a.pass);
  CHECK(a.ratio == 0.5);
  CHECK_FALSE(check_le("b", 3.0, 2.0).pass);
  CHECK(check_le("c", 0.0, 0.0).pass);
  CHECK(check_ge("d", 2.0, 1.0).pass);
  CHECK_FALSE(check_ge("e", 0.5, 1.0).pass);
  CHECK(check_close("f", 1.05, 1.0, 0.1).pass);
  CHECK_FALSE(check_close("g", 1.2, 1.0, 0.1).pass);
  CHECK_FALSE(check_le("nan", std::numeric_limits<double>::quiet_NaN(), 1.0).pass);
}

TEST_CASE("scenario output files and summary") {
  const fs::path d = scratch("scenario");
  ScenarioConfig cfg = suite_config("linear-decay", "quick", 1);
  const ScenarioResult res = run_scenario(cfg);
  write_result(res, d.string());
  for (const char* f : {"linear_decay.csv", "linear_decay_summary.csv", "summary.json", "manifest.json",
                        "config.resolved"})
    CHECK(fs::exists(d / f));
  const CsvData csv = read_csv((d / "linear_decay.csv").string());
  CHECK(csv.comment.rfind("tcstab ", 0) == 0);
  CHECK(csv.comment.find("flow.nu=0.0001") != std::string::npos);
  CHECK(csv.columns.front() == "k");
  const auto j = nlohmann::json::parse(slurp(d / "summary.json"));
  CHECK(j["scenario"] == "linear-decay");
  CHECK(j["params"].is_object());
  CHECK(j["metrics"].is_object());
  REQUIRE(j["checks"].is_array());
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("lhs"));
    CHECK(c.contains("rhs"));
    CHECK(c.contains("ratio"));
    CHECK(c.contains("pass"));
  }
  const auto m = nlohmann::json::parse(slurp(d / "manifest.json"));
  CHECK(m["failures"] == res.failures());
  CHECK(parse_config((d / "config.resolved").string()).scenario == "linear-decay");
  fs::remove_all(d);
}

TEST_CASE("same configuration and seed give byte-identical CSV files") {
  const fs::path a = scratch("det-a"), b = scratch("det-b"), c = scratch("det-c");
  for (const char* name : {"linear-decay", "nonlinear-stability", "resolvent-spacetime"}) {
    write_result(run_scenario(suite_config(name, "quick", 5)), (a / name).string());
    write_result(run_scenario(suite_config(name, "quick", 5)), (b / name).string());
    write_result(run_scenario(suite_config(name, "quick", 6)), (c / name).string());
  }
  int compared = 0, differing_seed = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (e.path().extension() != ".csv") continue;
    const fs::path rel = fs::relative(e.path(), a);
    CHECK(slurp(e.path()) == slurp(b / rel));
    differing_seed += slurp(e.path()) != slurp(c / rel);
    ++compared;
  }
  CHECK(compared >= 5);
  CHECK(differing_seed > 0);
  fs::remove_all(a);
  fs::remove_all(b);
  fs::remove_all(c);
}

TEST_CASE("report re-derives summaries from CSV files") {
  const fs::path d = scratch("report");
  write_result(run_scenario(suite_config("resolvent-static", "quick", 1)), (d / "resolvent-static").string());
  write_result(run_scenario(suite_config("k0-instability", "quick", 1)), (d / "k0-instability").string());
  const std::string text = report_directory(d.string());
  CHECK(text.find("max ratio") != std::string::npos);
  CHECK(text.find("slope beta=1") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(d / "report.json"));
  CHECK(j.contains("resolvent-static/resolvent_static.csv"));
  CHECK(j["k0-instability/k0_growth.csv"]["slope"].contains("1"));
  fs::remove_all(d);
}
