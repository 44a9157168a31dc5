#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tcstab/config.hpp"

namespace tcstab {

// 17 significant digits with a '.' decimal point, independent of the locale.
std::string format_number(double v);

using Cell = std::variant<double, std::int64_t, std::string>;

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> cols) : columns(std::move(cols)) {}
  void add(std::vector<Cell> row);
};

// Writes "# <comment>", the header row, then the rows.
void write_csv(const std::string& path, const CsvTable& table, const std::string& comment);

struct CsvData {
  std::string comment;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
  std::vector<double> numbers(const std::string& name) const;
};

CsvData read_csv(const std::string& path);

struct Check {
  std::string name;
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
  bool pass = false;
};

// lhs <= rhs, with ratio lhs / rhs (lhs itself when rhs is zero).
Check check_le(std::string name, double lhs, double rhs);
// lhs >= rhs, with ratio lhs / rhs.
Check check_ge(std::string name, double lhs, double rhs);
// |lhs - rhs| <= tol |rhs|, with ratio |lhs - rhs| / |rhs|.
Check check_close(std::string name, double lhs, double rhs, double tol);

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, CsvTable>> tables;  // file name, contents

  void metric(const std::string& name, double value) { metrics.emplace_back(name, value); }
  void check(Check c) { checks.push_back(std::move(c)); }
  void append(const std::vector<Check>& more) { checks.insert(checks.end(), more.begin(), more.end()); }
  int failures() const;
};

// Writes every table, summary.json, manifest.json and config.resolved into dir.
void write_result(const ScenarioResult& result, const std::string& dir);

std::string summary_json(const ScenarioResult& result);
std::string manifest_json(const ScenarioResult& result);

}  // namespace tcstab
