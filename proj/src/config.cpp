#include "tcstab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"
#include "tcstab/errors.hpp"
#include "tcstab/output.hpp"

namespace tcstab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto t = trim(v);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) throw ConfigError(key + ": not a number: '" + v + "'");
  return out;
}

long long to_integer(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto t = trim(v);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) throw ConfigError(key + ": not an integer: '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  const auto t = trim(v);
  if (t == "true" || t == "on" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "off" || t == "no" || t == "0") return false;
  throw ConfigError(key + ": not a boolean: '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& s : split_list(v)) out.push_back(to_double(key, s));
  return out;
}

std::vector<int> to_ints(const std::string& key, const std::string& v) {
  std::vector<int> out;
  for (const auto& s : split_list(v)) out.push_back(static_cast<int>(to_integer(key, s)));
  return out;
}

using Setter = std::function<void(ScenarioConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"scenario", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.scenario = trim(v); }},
      {"seed",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         const long long s = to_integer(k, v);
         if (s < 0) throw ConfigError(k + ": must be nonnegative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"output", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.output = trim(v); }},
      {"flow.nu", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.flow.nu = to_double(k, v); }},
      {"flow.A", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.flow.A = to_double(k, v); }},
      {"flow.B", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.flow.B = to_double(k, v); }},
      {"flow.epsilon",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.flow.epsilon = to_double(k, v); }},
      {"flow.c_hat",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.flow.c_hat = to_double(k, v); }},
      {"flow.theta",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.flow.theta = to_double(k, v); }},
      {"flow.K",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.flow.mode_cutoff = static_cast<int>(to_integer(k, v));
       }},
      {"flow.weight_uses_mu",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.flow.weight_uses_mu = to_bool(k, v); }},
      {"grid.kind",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         const auto t = trim(v);
         if (t == "truncated")
           c.grid.kind = GridKind::Truncated;
         else if (t == "mapped")
           c.grid.kind = GridKind::Mapped;
         else
           throw ConfigError(k + ": expected truncated or mapped, got '" + t + "'");
       }},
      {"grid.N",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.grid.N = static_cast<int>(to_integer(k, v));
       }},
      {"grid.r_max",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.grid.r_max = to_double(k, v); }},
      {"grid.map_scale",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.grid.map_scale = to_double(k, v); }},
      {"run.modes", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.modes = to_ints(k, v); }},
      {"run.alphas",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.alphas = to_doubles(k, v); }},
      {"run.qs", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.qs = to_doubles(k, v); }},
      {"run.betas",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.betas = to_doubles(k, v); }},
      {"run.amplitudes",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.amplitudes = to_doubles(k, v); }},
      {"run.samples",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.run.samples = static_cast<int>(to_integer(k, v));
       }},
      {"run.horizon",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.horizon = to_double(k, v); }},
      {"run.dt_scale",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.dt_scale = to_double(k, v); }},
      {"run.dt_max",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.dt_max = to_double(k, v); }},
      {"run.amplitude",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.amplitude = to_double(k, v); }},
      {"run.cadence",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.run.cadence = static_cast<int>(to_integer(k, v));
       }},
      {"run.dealias",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.dealias = to_bool(k, v); }},
      {"run.nonlinear",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.nonlinear = to_bool(k, v); }},
      {"run.unit_weight",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.unit_weight = to_bool(k, v); }},
      {"run.refine",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.refine = to_bool(k, v); }},
      {"run.nu_t_lo",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.nu_t_lo = to_double(k, v); }},
      {"run.nu_t_hi",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.run.nu_t_hi = to_double(k, v); }},
  };
  return table;
}

// Top-level keys that are shorthands for flow keys.
std::string qualify(const std::string& section, const std::string& key) {
  if (!section.empty()) return section + "." + key;
  if (key == "scenario" || key == "seed" || key == "output") return key;
  return "flow." + key;
}

void assign(ScenarioConfig& cfg, const std::string& full_key, const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(full_key);
  if (it == table.end()) throw ConfigError("unknown key: " + full_key);
  it->second(cfg, full_key, value);
}

ScenarioConfig finish(ScenarioConfig cfg) {
  if (cfg.scenario.empty()) throw ConfigError("missing key: scenario");
  try {
    resolve_defaults(cfg);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("flow: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig blank() {
  ScenarioConfig cfg;
  cfg.grid.N = 0;
  cfg.grid.r_max = 0.0;
  return cfg;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v[i]);
  return s;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

std::vector<std::pair<std::string, std::string>> entries(const ScenarioConfig& c) {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  const FlowParams f = resolved(c.flow);
  return {
      {"scenario", c.scenario},
      {"seed", std::to_string(c.seed)},
      {"output", c.output},
      {"flow.nu", format_number(f.nu)},
      {"flow.A", format_number(f.A)},
      {"flow.B", format_number(f.B)},
      {"flow.epsilon", format_number(f.epsilon)},
      {"flow.c_hat", format_number(f.c_hat)},
      {"flow.theta", format_number(f.theta)},
      {"flow.K", std::to_string(f.mode_cutoff)},
      {"flow.weight_uses_mu", b(f.weight_uses_mu)},
      {"grid.kind", c.grid.kind == GridKind::Mapped ? "mapped" : "truncated"},
      {"grid.N", std::to_string(c.grid.N)},
      {"grid.r_max", format_number(c.grid.r_max)},
      {"grid.map_scale", format_number(c.grid.map_scale)},
      {"run.modes", join(c.run.modes)},
      {"run.alphas", join(c.run.alphas)},
      {"run.qs", join(c.run.qs)},
      {"run.betas", join(c.run.betas)},
      {"run.amplitudes", join(c.run.amplitudes)},
      {"run.samples", std::to_string(c.run.samples)},
      {"run.horizon", format_number(c.run.horizon)},
      {"run.dt_scale", format_number(c.run.dt_scale)},
      {"run.dt_max", format_number(c.run.dt_max)},
      {"run.amplitude", format_number(c.run.amplitude)},
      {"run.cadence", std::to_string(c.run.cadence)},
      {"run.dealias", b(c.run.dealias)},
      {"run.nonlinear", b(c.run.nonlinear)},
      {"run.unit_weight", b(c.run.unit_weight)},
      {"run.refine", b(c.run.refine)},
      {"run.nu_t_lo", format_number(c.run.nu_t_lo)},
      {"run.nu_t_hi", format_number(c.run.nu_t_hi)},
  };
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"linear-decay",        "resolvent-static",  "resolvent-spacetime",
                                              "nonlinear-stability", "threshold-sweep",   "k0-instability",
                                              "decomposition-check", "invariant-suite"};
  return names;
}

ScenarioConfig parse_config_text(const std::string& text) {
  ScenarioConfig cfg = blank();
  std::stringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "flow" && section != "grid" && section != "run") throw ConfigError("unknown section: " + section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    assign(cfg, key.find('.') == std::string::npos ? qualify(section, key) : key, line.substr(eq + 1));
  }
  return finish(cfg);
}

ScenarioConfig parse_config_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("JSON configuration must be an object");
  ScenarioConfig cfg = blank();
  auto scalar = [](const std::string& key, const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_number(v.get<double>());
    if (v.is_array()) {
      std::string s;
      for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(key + ": list entries must be numbers");
        s += (s.empty() ? "" : ",") + (e.is_number_integer() ? std::to_string(e.get<long long>())
                                                             : format_number(e.get<double>()));
      }
      return s;
    }
    throw ConfigError(key + ": unsupported value type");
  };
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      if (key != "flow" && key != "grid" && key != "run") throw ConfigError("unknown section: " + key);
      for (const auto& [sub, v] : value.items()) assign(cfg, key + "." + sub, scalar(key + "." + sub, v));
    } else {
      const std::string full = qualify("", key);
      assign(cfg, full, scalar(full, value));
    }
  }
  return finish(cfg);
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read configuration " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = (path.size() > 5 && path.substr(path.size() - 5) == ".json") ||
                    (first != std::string::npos && text[first] == '{');
  return json ? parse_config_json(text) : parse_config_text(text);
}

void resolve_defaults(ScenarioConfig& c) {
  const std::string& s = c.scenario;
  c.flow = resolved(c.flow);
  const bool k0 = s == "k0-instability";
  if (c.grid.N == 0) c.grid.N = k0 ? 384 : (s == "invariant-suite" ? 512 : 256);
  if (c.grid.r_max == 0.0) c.grid.r_max = k0 ? 300.0 : 60.0;
  auto modes = [&](std::vector<int> m) {
    if (c.run.modes.empty()) c.run.modes = std::move(m);
  };
  auto alphas = [&](std::vector<double> a) {
    if (c.run.alphas.empty()) c.run.alphas = std::move(a);
  };
  auto samples = [&](int n) {
    if (c.run.samples == 0) c.run.samples = n;
  };
  auto horizon = [&](double h) {
    if (c.run.horizon == 0.0) c.run.horizon = h;
  };
  if (s == "linear-decay") {
    modes({1, 2});
    alphas({0, 1});
    samples(3);
    horizon(1000.0);
  } else if (s == "resolvent-static") {
    modes({1, 2, 4});
    alphas({0, 1, 2});
    samples(20);
  } else if (s == "resolvent-spacetime") {
    modes({1, 2, 4});
    alphas({0, 1, 2});
    samples(20);
    horizon(100.0);
  } else if (s == "nonlinear-stability") {
    horizon(10.0);
  } else if (s == "threshold-sweep") {
    horizon(2.0);
  } else if (s == "decomposition-check") {
    modes({1, 2});
    alphas({0, 1, 2});
    samples(1);
    horizon(100.0);
  } else if (s == "invariant-suite") {
    modes({1, 2, 3, 4, 5, 6, 7, 8});
    alphas({-2, -1, 0, 0.5, 1, 2, 3});
  }
}

void validate(const ScenarioConfig& c) {
  bool known = false;
  for (const auto& n : scenario_names()) known = known || n == c.scenario;
  if (!known) throw ConfigError("scenario: unknown scenario '" + c.scenario + "'");
  try {
    validate(c.flow);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("flow: ") + e.what());
  }
  if (c.grid.N < 16) throw ConfigError("grid.N: must be at least 16");
  if (c.grid.kind == GridKind::Truncated && !(c.grid.r_max > 2.0)) throw ConfigError("grid.r_max: must exceed 2");
  if (!(c.grid.map_scale > 0.0)) throw ConfigError("grid.map_scale: must be positive");
  for (int k : c.run.modes)
    if (k == 0 || std::abs(k) > 64) throw ConfigError("run.modes: entries must satisfy 1 <= |k| <= 64");
  if (c.run.samples < 0) throw ConfigError("run.samples: must be nonnegative");
  if (c.run.horizon < 0.0) throw ConfigError("run.horizon: must be nonnegative");
  if (!(c.run.dt_scale > 0.0)) throw ConfigError("run.dt_scale: must be positive");
  if (!(c.run.dt_max > 0.0)) throw ConfigError("run.dt_max: must be positive");
  if (!(c.run.amplitude >= 0.0)) throw ConfigError("run.amplitude: must be nonnegative");
  if (c.run.cadence < 8) throw ConfigError("run.cadence: at least 8 samples are needed for time quadrature");
  for (double a : c.run.amplitudes)
    if (!(a >= 0.0)) throw ConfigError("run.amplitudes: entries must be nonnegative");
  if (!(c.run.nu_t_lo > 0.0 && c.run.nu_t_hi > c.run.nu_t_lo))
    throw ConfigError("run.nu_t_hi: need 0 < nu_t_lo < nu_t_hi");
}

std::string echo_config(const ScenarioConfig& c) {
  std::string out;
  std::string section;
  for (const auto& [key, value] : entries(c)) {
    const auto dot = key.find('.');
    const std::string sec = dot == std::string::npos ? "" : key.substr(0, dot);
    const std::string name = dot == std::string::npos ? key : key.substr(dot + 1);
    if (key == "output" && value.empty()) continue;
    if (sec != section) {
      out += "\n[" + sec + "]\n";
      section = sec;
    }
    out += name + " = " + value + "\n";
  }
  return out;
}

std::string config_summary(const ScenarioConfig& c) {
  std::string out;
  for (const auto& [key, value] : entries(c)) {
    if (key == "output") continue;
    std::string v = value;
    for (auto& ch : v)
      if (ch == ',') ch = ';';
    v.erase(std::remove(v.begin(), v.end(), ' '), v.end());
    out += (out.empty() ? "" : " ") + key + "=" + v;
  }
  return out;
}

std::string output_root() {
  const char* env = std::getenv("TCSTAB_OUTPUT_ROOT");
  return env && *env ? std::string(env) : std::string("tcstab-out");
}

}  // namespace tcstab
