#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "ratext/io/json.hpp"
#include "ratext/numverify/verify.hpp"

namespace ratext::io {

/// Everything one CLI invocation needs; the JSON form uses the flag names.
struct RunConfig {
  std::string command;
  std::optional<FamilySpec> spec;
  unsigned n = 0;
  unsigned k_max = 4;
  numverify::GridRequest grid;
  std::optional<double> tol;
  std::string out;
  std::string format = "csv";
  std::string suite;
  std::string what = "psi";  // sample: psi | psi_forward | V | Vtilde
  unsigned level = 0;

  friend bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.command == b.command && a.spec == b.spec && a.n == b.n && a.k_max == b.k_max &&
           a.grid.automatic == b.grid.automatic && a.grid.lo == b.grid.lo && a.grid.hi == b.grid.hi &&
           a.grid.N == b.grid.N && a.tol == b.tol && a.out == b.out && a.format == b.format && a.suite == b.suite &&
           a.what == b.what && a.level == b.level;
  }
};

/// "auto" or "LO,HI,N".
inline numverify::GridRequest parse_grid(const std::string& text, std::size_t default_n = 4000) {
  numverify::GridRequest g;
  g.N = default_n;
  if (text == "auto") return g;
  std::stringstream ss(text);
  std::string lo, hi, n;
  if (!std::getline(ss, lo, ',') || !std::getline(ss, hi, ',') || !std::getline(ss, n) || n.find(',') != std::string::npos) {
    throw std::invalid_argument("grid must be 'auto' or 'LO,HI,N', got '" + text + "'");
  }
  try {
    std::size_t used = 0;
    g.lo = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    g.hi = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
    const long count = std::stol(n, &used);
    if (used != n.size() || count <= 0) throw std::invalid_argument(n);
    g.N = static_cast<std::size_t>(count);
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must be 'auto' or 'LO,HI,N', got '" + text + "'");
  }
  g.automatic = false;
  return g;
}

inline std::string format_grid(const numverify::GridRequest& g) {
  if (g.automatic) return "auto";
  // 17 digits so that the text form parses back to the same doubles.
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu", g.lo, g.hi, g.N);
  return buf;
}

inline Json to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  if (c.spec) {
    const Json family = to_json(*c.spec);
    for (const auto& [k, v] : family.items()) j[k] = v;
  }
  j["n"] = c.n;
  j["kmax"] = c.k_max;
  j["grid"] = format_grid(c.grid);
  j["grid_points"] = c.grid.N;
  if (c.tol) j["tol"] = *c.tol;
  j["out"] = c.out;
  j["format"] = c.format;
  if (!c.suite.empty()) j["suite"] = c.suite;
  j["what"] = c.what;
  j["level"] = c.level;
  return j;
}

inline RunConfig run_config_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  RunConfig c;
  c.command = j.value("command", std::string());
  if (j.contains("family")) c.spec = family_from_json(j);
  c.n = j.value("n", 0u);
  c.k_max = j.value("kmax", 4u);
  const std::size_t points = j.value("grid_points", std::size_t{4000});
  c.grid = parse_grid(j.value("grid", std::string("auto")), points);
  if (j.contains("tol")) c.tol = j.at("tol").get<double>();
  c.out = j.value("out", std::string());
  c.format = j.value("format", std::string("csv"));
  c.suite = j.value("suite", std::string());
  c.what = j.value("what", std::string("psi"));
  c.level = j.value("level", 0u);
  return c;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config '" + path + "': " + e.what());
  }
  try {
    return run_config_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config '" + path + "': " + e.what());
  }
}

}  // namespace ratext::io
