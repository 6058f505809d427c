#include <iostream>

#include "CLI11.hpp"
#include "dirode/errors.hpp"
#include "dirode_cli/app.hpp"

namespace dirode::cli {

namespace {

struct Flags {
  std::string config, out = "out", scheme, ladder, manifest;
  std::uint64_t seed = 0;
  bool seed_set = false, quiet = false;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file");
  sub->add_option("--out", f.out, "output directory")->capture_default_str();
  sub->add_option("--seed", f.seed, "master seed")->each([&f](const std::string&) { f.seed_set = true; });
  sub->add_option("--scheme", f.scheme, "scheme name");
  sub->add_option("--ladder", f.ladder, "convergence ladder, param:rungs[:ratio]");
  sub->add_flag("--quiet", f.quiet, "print nothing on success");
}

RunConfig resolve(const Flags& f, const std::string& problem) {
  RunConfig cfg = f.config.empty() ? parse_config("", problem) : parse_config_file(f.config, problem);
  if (f.seed_set) set_override(cfg, "seed", f.seed);
  if (!f.scheme.empty()) set_override(cfg, "scheme", f.scheme);
  if (!f.ladder.empty()) set_override(cfg, "ladder", f.ladder);
  return cfg;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Directional-ODE solvers for advection-diffusion problems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Flags flags;
  std::string problem;

  auto* run = app.add_subcommand("run", "run the experiment named by the config's problem key");
  add_flags(run, flags);
  std::string positional;
  run->add_option("file", positional, "JSON config file");
  for (const auto& name : problem_names()) add_flags(app.add_subcommand(name, "run the " + name + " experiment"), flags);
  auto* rerun = app.add_subcommand("rerun", "re-run from a manifest's echoed config");
  rerun->add_option("manifest", flags.manifest, "manifest.txt of an earlier run")->required();
  rerun->add_option("--out", flags.out, "output directory")->capture_default_str();
  rerun->add_flag("--quiet", flags.quiet, "print nothing on success");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    RunConfig cfg;
    if (rerun->parsed()) {
      cfg = config_from_manifest(flags.manifest);
    } else if (run->parsed()) {
      if (!positional.empty()) flags.config = positional;
      if (flags.config.empty()) throw ConfigError("run needs a config file");
      cfg = resolve(flags, "");
    } else {
      cfg = resolve(flags, app.get_subcommands().front()->get_name());
    }
    const RunManifest m = dispatch(cfg, flags.out);
    if (!flags.quiet) {
      std::cout << m.problem << ": ok in " << m.duration_s << " s, output in " << flags.out << "\n";
      for (const auto& [k, v] : m.metrics) std::cout << "  " << k << " = " << v << "\n";
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dirode::cli
