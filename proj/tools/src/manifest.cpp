#include <fstream>

#include "dirode/csv.hpp"
#include "dirode_cli/app.hpp"

namespace dirode::cli {

namespace {

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

std::vector<std::pair<std::string, std::string>> read_pairs(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read manifest " + path.string());
  std::vector<std::pair<std::string, std::string>> out;
  for (std::string line; std::getline(is, line);) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return out;
}

}  // namespace

std::string manifest_text(const RunManifest& m) {
  std::string s;
  s += "tool=dirode-cli\n";
  s += std::string("version=") + kToolVersion + "\n";
  s += "problem=" + m.problem + "\n";
  s += "seed=" + std::to_string(m.seed) + "\n";
  s += std::string("status=") + (m.ok ? "ok" : "error") + "\n";
  if (!m.ok) s += "error=" + one_line(m.error) + "\n";
  s += "duration_s=" + format_double(m.duration_s) + "\n";
  s += "config=" + m.config_echo + "\n";
  for (const auto& [k, v] : m.metrics) s += "metric." + k + "=" + format_double(v) + "\n";
  for (const auto& a : m.artifacts) s += "artifact=" + a + "\n";
  return s;
}

RunConfig config_from_manifest(const std::filesystem::path& manifest) {
  for (const auto& [k, v] : read_pairs(manifest))
    if (k == "config") return parse_config(v);
  throw ConfigError("manifest " + manifest.string() + " has no config line");
}

std::map<std::string, double> metrics_from_manifest(const std::filesystem::path& manifest) {
  std::map<std::string, double> out;
  for (const auto& [k, v] : read_pairs(manifest))
    if (k.rfind("metric.", 0) == 0) out[k.substr(7)] = std::stod(v);
  return out;
}

}  // namespace dirode::cli
