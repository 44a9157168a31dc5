#include "tcstab/output.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tcstab/errors.hpp"
#include "tcstab/version.hpp"

namespace tcstab {

namespace {

using Json = nlohmann::ordered_json;

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") != std::string::npos) throw ShapeError("CSV text cell contains a separator: " + s);
  return s;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

Json number_json(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void CsvTable::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw ShapeError("CSV row width does not match the header");
  rows.push_back(std::move(row));
}

void write_csv(const std::string& path, const CsvTable& table, const std::string& comment) {
  std::string text = "# " + comment + "\n";
  for (std::size_t j = 0; j < table.columns.size(); ++j) text += (j ? "," : "") + table.columns[j];
  text += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) text += (j ? "," : "") + cell_text(row[j]);
    text += "\n";
  }
  write_text(path, text);
}

int CsvData::column(const std::string& name) const {
  for (std::size_t j = 0; j < columns.size(); ++j)
    if (columns[j] == name) return static_cast<int>(j);
  return -1;
}

std::vector<double> CsvData::numbers(const std::string& name) const {
  const int j = column(name);
  if (j < 0) throw ShapeError("missing CSV column: " + name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(std::stod(row[j]));
  return out;
}

CsvData read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  CsvData data;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (data.comment.empty()) data.comment = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
      continue;
    }
    auto cells = split_line(line);
    if (!header) {
      data.columns = std::move(cells);
      header = true;
    } else {
      if (cells.size() != data.columns.size()) throw ShapeError("ragged CSV row in " + path);
      data.rows.push_back(std::move(cells));
    }
  }
  if (!header) throw ShapeError("CSV without header: " + path);
  return data;
}

namespace {

double quotient(double lhs, double rhs) { return rhs != 0.0 ? lhs / rhs : lhs; }

}  // namespace

Check check_le(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, rhs, quotient(lhs, rhs), lhs <= rhs};
}

Check check_ge(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, rhs, quotient(lhs, rhs), lhs >= rhs};
}

Check check_close(std::string name, double lhs, double rhs, double tol) {
  const double rel = std::abs(lhs - rhs) / std::abs(rhs);
  return {std::move(name), lhs, rhs, rel, rel <= tol};
}

int ScenarioResult::failures() const {
  int n = 0;
  for (const auto& c : checks) n += c.pass ? 0 : 1;
  return n;
}

std::string summary_json(const ScenarioResult& result) {
  Json j;
  j["scenario"] = result.config.scenario;
  Json params;
  params["seed"] = result.config.seed;
  params["config"] = config_summary(result.config);
  params["version"] = kVersion;
  j["params"] = params;
  Json metrics = Json::object();
  for (const auto& [k, v] : result.metrics) metrics[k] = number_json(v);
  j["metrics"] = metrics;
  Json checks = Json::array();
  for (const auto& c : result.checks)
    checks.push_back({{"name", c.name}, {"lhs", number_json(c.lhs)}, {"rhs", number_json(c.rhs)},
                      {"ratio", number_json(c.ratio)}, {"pass", c.pass}});
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

std::string manifest_json(const ScenarioResult& result) {
  Json j;
  j["scenario"] = result.config.scenario;
  j["seed"] = result.config.seed;
  j["checks"] = result.checks.size();
  j["failures"] = result.failures();
  Json items = Json::array();
  for (const auto& c : result.checks) items.push_back({{"name", c.name}, {"pass", c.pass}});
  j["items"] = items;
  Json files = Json::array();
  for (const auto& t : result.tables) files.push_back(t.first);
  j["csv"] = files;
  return j.dump(2) + "\n";
}

void write_result(const ScenarioResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::string comment = "tcstab " + std::string(kVersion) + " " + config_summary(result.config);
  for (const auto& [name, table] : result.tables) write_csv(dir + "/" + name, table, comment);
  write_text(dir + "/summary.json", summary_json(result));
  write_text(dir + "/manifest.json", manifest_json(result));
  write_text(dir + "/config.resolved", echo_config(result.config));
}

}  // namespace tcstab
