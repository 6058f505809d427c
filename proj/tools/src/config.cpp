#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "dirode_cli/app.hpp"

namespace dirode::cli {

using json = nlohmann::ordered_json;

namespace {

// Every key with its default. Zero for nx, ny, dt, steps, horizon and d, an empty
// scheme or interpolation and a corrector_cap of -1 mean the problem's own default.
const json& defaults() {
  static const json d = [] {
    json j;
    j["problem"] = "";
    j["scheme"] = "";
    j["seed"] = std::uint64_t{0};
    j["nx"] = std::uint64_t{0};
    j["ny"] = std::uint64_t{0};
    j["dt"] = 0.0;
    j["steps"] = std::uint64_t{0};
    j["horizon"] = 0.0;
    j["ladder"] = "";
    j["nu"] = 0.005;
    j["d"] = 0.0;
    j["c"] = 1.0;
    j["mode"] = std::uint64_t{1};
    j["order"] = std::uint64_t{2};
    j["sampling"] = "uniform";
    j["corrector_cap"] = -1;
    j["tolerance"] = 1e-10;
    j["interpolation"] = "";
    j["beta"] = 10.0;
    j["k"] = 0.0;
    j["d0"] = 1e-3;
    j["s"] = 0.01;
    j["wind"] = "per-step";
    j["ref_substeps"] = std::uint64_t{100};
    j["keep_every"] = std::uint64_t{0};
    j["re"] = 100.0;
    j["aspect"] = 10.0;
    j["h1"] = 0.0;
    j["h2"] = 0.0;
    j["u1"] = 0.0;
    j["u2"] = 0.0;
    j["u_inlet"] = 1.0;
    j["step_length"] = 1.0;
    j["adi_form"] = "literal";
    j["psi_iterations"] = std::uint64_t{1};
    j["max_steps"] = std::uint64_t{20000};
    j["ns_tolerance"] = 1e-8;
    j["sections"] = json::array();
    j["lower"] = 0.1;
    j["upper"] = 0.9;
    j["samples"] = json::array({100, 1000, 10000, 100000});
    j["trials"] = std::uint64_t{100};
    return j;
  }();
  return d;
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void check_type(const std::string& key, const json& def, const json& v) {
  auto fail = [&](const char* want) { throw ConfigError("key '" + key + "' must be " + want); };
  if (def.is_string()) {
    if (!v.is_string()) fail("a string");
  } else if (def.is_number_unsigned()) {
    if (!v.is_number_integer() || v.get<long long>() < 0) fail("a non-negative integer");
  } else if (def.is_number_integer()) {
    if (!v.is_number_integer()) fail("an integer");
  } else if (def.is_number()) {
    if (!v.is_number()) fail("a number");
  } else if (def.is_array()) {
    if (!v.is_array()) fail("an array of numbers");
    for (const auto& e : v)
      if (!e.is_number()) fail("an array of numbers");
  }
}

void validate(const RunConfig& cfg) {
  const std::string p = cfg.problem();
  if (p.empty()) throw ConfigError("problem required");
  const auto& names = problem_names();
  if (std::find(names.begin(), names.end(), p) == names.end())
    throw ConfigError("key 'problem': unknown problem '" + p + "'");
  for (const char* key : {"nu", "d0", "re", "aspect", "u_inlet", "step_length"})
    if (!(cfg.num(key) > 0.0)) throw ConfigError("key '" + std::string(key) + "' must be positive");
  for (const char* key : {"d", "dt", "horizon", "ns_tolerance", "tolerance", "beta"})
    if (cfg.num(key) < 0.0) throw ConfigError("key '" + std::string(key) + "' must not be negative");
  if (cfg.num("k") != 0.0 && cfg.num("k") != 1.0) throw ConfigError("key 'k' must be 0 or 1");
  if (!(cfg.num("upper") > cfg.num("lower")) || !(cfg.num("lower") > 0.0))
    throw ConfigError("keys 'lower'/'upper' need 0 < lower < upper");
  const std::string s = cfg.str("sampling");
  if (s != "uniform" && s != "chebyshev") throw ConfigError("key 'sampling' must be uniform or chebyshev");
  const std::string w = cfg.str("wind");
  if (w != "per-step" && w != "fixed") throw ConfigError("key 'wind' must be per-step or fixed");
  const std::string a = cfg.str("adi_form");
  if (a != "literal" && a != "central") throw ConfigError("key 'adi_form' must be literal or central");
  const std::string i = cfg.str("interpolation");
  if (!i.empty() && i != "linear" && i != "cubic" && i != "cubic-unlimited")
    throw ConfigError("key 'interpolation' must be linear, cubic or cubic-unlimited");
  if (cfg.integer("corrector_cap") < -1) throw ConfigError("key 'corrector_cap' must be -1 (default) or more");
  if (cfg.count("order") > 8) throw ConfigError("key 'order' must be at most 8");
  for (const auto& n : cfg.values.at("samples"))
    if (!(n.get<double>() >= 2.0)) throw ConfigError("key 'samples' entries must be at least 2");
}

}  // namespace

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names{"burgers",    "diffuse1d",       "particles2d",
                                              "navier-stokes", "stochastic", "stability-check",
                                              "split-order"};
  return names;
}

RunConfig parse_config(const std::string& text, const std::string& problem) {
  json doc;
  const bool blank = std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); });
  try {
    doc = blank ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    const auto col_at = what.find("column ");
    const auto detail = col_at == std::string::npos ? std::string::npos : what.find(": ", col_at);
    if (detail != std::string::npos) what = what.substr(detail + 2);
    throw ConfigError("parse error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                      ": " + what);
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  if (!problem.empty()) {
    if (doc.contains("problem") && doc["problem"] != problem)
      throw ConfigError("key 'problem': config says " + doc["problem"].dump() + " but the command runs " + problem);
    doc["problem"] = problem;
  }
  RunConfig cfg{defaults()};
  for (const auto& [key, value] : doc.items()) {
    if (!cfg.values.contains(key)) throw ConfigError("unknown key '" + key + "'");
    check_type(key, cfg.values.at(key), value);
    cfg.values[key] = value;
  }
  validate(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path, const std::string& problem) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str(), problem);
}

void set_override(RunConfig& cfg, const std::string& key, const json& value) {
  if (!cfg.values.contains(key)) throw ConfigError("unknown key '" + key + "'");
  check_type(key, defaults().at(key), value);
  cfg.values[key] = value;
  validate(cfg);
}

}  // namespace dirode::cli
