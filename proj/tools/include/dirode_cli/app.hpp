#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace dirode::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Malformed or invalid configuration; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Resolved configuration. values holds every known key, defaults filled in,
// in a fixed key order so the echo is stable.
struct RunConfig {
  nlohmann::ordered_json values;

  std::string problem() const { return values.at("problem").get<std::string>(); }
  std::uint64_t seed() const { return values.at("seed").get<std::uint64_t>(); }
  double num(const char* key) const { return values.at(key).get<double>(); }
  std::size_t count(const char* key) const { return values.at(key).get<std::size_t>(); }
  int integer(const char* key) const { return values.at(key).get<int>(); }
  std::string str(const char* key) const { return values.at(key).get<std::string>(); }
};

const std::vector<std::string>& problem_names();

// Strict: unknown keys, wrong types and a missing problem are ConfigErrors.
// A non-empty problem fills in the key and must agree with the document.
RunConfig parse_config(const std::string& text, const std::string& problem = "");
RunConfig parse_config_file(const std::filesystem::path& path, const std::string& problem = "");

// Applies a command-line override to an already parsed config.
void set_override(RunConfig& cfg, const std::string& key, const nlohmann::ordered_json& value);

struct RunManifest {
  std::string config_echo;  // compact JSON of the resolved config
  std::string problem;
  std::uint64_t seed = 0;
  double duration_s = 0.0;
  std::map<std::string, double> metrics;
  std::vector<std::string> artifacts;
  bool ok = true;
  std::string error;
};

// Runs the experiment and writes its CSVs and manifest.txt into out_dir.
// Failures are recorded in the manifest and rethrown.
RunManifest dispatch(const RunConfig& cfg, const std::filesystem::path& out_dir);

std::string manifest_text(const RunManifest& m);
RunConfig config_from_manifest(const std::filesystem::path& manifest);
std::map<std::string, double> metrics_from_manifest(const std::filesystem::path& manifest);

// Per-component seed from the master seed and a fixed label.
std::uint64_t labeled_seed(std::uint64_t master, const std::string& label);

int run_cli(int argc, char** argv);

}  // namespace dirode::cli
