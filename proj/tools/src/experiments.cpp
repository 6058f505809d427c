#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "dirode/dirode.hpp"
#include "dirode_cli/app.hpp"

namespace dirode::cli {

namespace fs = std::filesystem;

namespace {

struct Output {
  fs::path dir;
  RunManifest& manifest;

  std::ofstream open(const std::string& name) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw NumericalError("cannot open " + (dir / name).string() + " for writing");
    manifest.artifacts.push_back(name);
    return os;
  }
  void field(const std::string& name, const Field1D& f) {
    auto os = open(name);
    write_csv(os, f);
  }
  void field(const std::string& name, const Field2D& f) {
    auto os = open(name);
    write_csv(os, f);
  }
  void metric(const std::string& name, double v) { manifest.metrics[name] = v; }
};

std::string csv_num(double v) { return std::isnan(v) ? "nan" : format_double(v); }

struct Ladder {
  std::string param;  // "", "dt" or "dx"
  std::size_t rungs = 1;
  std::size_t ratio = 2;
};

Ladder parse_ladder(const std::string& text, const std::string& fallback = "") {
  const std::string spec = text.empty() ? fallback : text;
  if (spec.empty()) return {};
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 2 || parts.size() > 3 || (parts[0] != "dt" && parts[0] != "dx"))
    throw ConfigError("ladder must be dt:<rungs>[:<ratio>] or dx:<rungs>[:<ratio>]");
  Ladder l{parts[0], 0, 2};
  try {
    l.rungs = std::stoul(parts[1]);
    if (parts.size() == 3) l.ratio = std::stoul(parts[2]);
  } catch (const std::exception&) {
    throw ConfigError("ladder rungs and ratio must be integers");
  }
  if (l.rungs < 3) throw ConfigError("ladder needs at least 3 rungs");
  if (l.ratio < 1) throw ConfigError("ladder ratio must be at least 1");
  return l;
}

std::size_t pow_size(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < e; ++k) r *= b;
  return r;
}

// Rung k of a ladder: (nx, dt, steps) with the horizon kept for dt ladders.
struct Rung {
  std::size_t nx;
  double dt;
  std::size_t steps;
};

std::vector<Rung> rungs(const Ladder& l, std::size_t nx, double dt, std::size_t steps, bool keep_steps) {
  if (l.param.empty()) return {{nx, dt, steps}};
  std::vector<Rung> out;
  for (std::size_t k = 0; k < l.rungs; ++k) {
    const std::size_t f = pow_size(l.ratio, k);
    if (l.param == "dx")
      out.push_back({(nx - 1) * f + 1, dt, steps});
    else
      out.push_back({nx, dt / static_cast<double>(f), keep_steps ? steps : steps * f});
  }
  return out;
}

Interpolation interpolation_of(const RunConfig& cfg, Interpolation fallback) {
  const std::string s = cfg.str("interpolation");
  if (s.empty()) return fallback;
  if (s == "linear") return Interpolation::linear;
  if (s == "cubic") return Interpolation::cubic;
  return Interpolation::cubic_unlimited;
}

int cap_of(const RunConfig& cfg, int fallback) {
  const int c = cfg.integer("corrector_cap");
  return c < 0 ? fallback : c;
}

std::size_t or_default(std::size_t v, std::size_t d) { return v ? v : d; }
double or_default(double v, double d) { return v > 0.0 ? v : d; }

Sampling sampling_of(const RunConfig& cfg) {
  return cfg.str("sampling") == "chebyshev" ? Sampling::chebyshev : Sampling::uniform;
}

void run_burgers_experiment(const RunConfig& cfg, Output& out) {
  const double nu = cfg.num("nu");
  const std::size_t nx = or_default(cfg.count("nx"), std::size_t{81});
  const double dt = or_default(cfg.num("dt"), 0.01);
  const std::size_t steps = or_default(cfg.count("steps"), std::size_t{10});
  const std::string scheme = cfg.str("scheme");
  const auto schemes = scheme.empty() || scheme == "all" ? all_burgers_schemes()
                                                         : std::vector<BurgersScheme>{parse_burgers_scheme(scheme)};
  BurgersOptions opt;
  opt.interpolation = interpolation_of(cfg, Interpolation::linear);
  opt.corrector_cap = cap_of(cfg, 20);
  opt.tolerance = cfg.num("tolerance");

  auto table = out.open("burgers_errors.csv");
  table << "scheme,nx,dt,lambda,error\n";
  const auto ladder = rungs(parse_ladder(cfg.str("ladder")), nx, dt, steps, true);
  for (std::size_t r = 0; r < ladder.size(); ++r) {
    const Rung& g = ladder[r];
    const Grid1D grid = build_grid_1d(2.0, g.nx, -1.0);
    const auto analytic = burgers_analytic_table(grid, g.dt, g.steps, nu);
    const double lambda = nu * g.dt / (grid.dx * grid.dx);
    for (auto s : schemes) {
      const auto run = run_burgers(s, g.nx, g.dt, nu, g.steps, opt, &analytic);
      table << to_string(s) << ',' << g.nx << ',' << csv_num(g.dt) << ',' << csv_num(lambda) << ','
            << csv_num(run.error) << '\n';
      const std::string tag = to_string(s) + (ladder.size() > 1 ? ".r" + std::to_string(r) : "");
      out.metric("error." + tag, run.error);
      Field1D last(run.grid);
      last.u = run.fields.back();
      out.field("burgers_" + to_string(s) + (ladder.size() > 1 ? "_r" + std::to_string(r) : "") + ".csv", last);
    }
  }
}

void run_diffuse_experiment(const RunConfig& cfg, Output& out) {
  const double d = or_default(cfg.num("d"), 1.0);
  const int m = cfg.integer("mode");
  const std::size_t nx = or_default(cfg.count("nx"), std::size_t{101});
  const double dt = or_default(cfg.num("dt"), 0.01);
  const std::size_t steps = or_default(cfg.count("steps"), std::size_t{10});
  const std::string scheme = cfg.str("scheme").empty() ? "temporal" : cfg.str("scheme");
  if (scheme != "temporal" && scheme != "spatial-ode" && scheme != "classic-implicit" && scheme != "ftcs")
    throw ConfigError("key 'scheme': diffuse1d takes temporal, spatial-ode, classic-implicit or ftcs");
  const SchemeConfig sc{cfg.integer("order"), sampling_of(cfg), cap_of(cfg, 5000), cfg.num("tolerance")};
  const double k = m * std::numbers::pi;

  const auto ladder = parse_ladder(cfg.str("ladder"));
  const auto plan = rungs(ladder, nx, dt, steps, false);
  std::vector<double> hs, errs;
  for (std::size_t r = 0; r < plan.size(); ++r) {
    const Rung& g = plan[r];
    Field1D u = sample_function(build_grid_1d(1.0, g.nx), [k](double x) { return std::sin(k * x); });
    u.bc = {0.0, 0.0};
    for (std::size_t n = 0; n < g.steps; ++n) {
      const double t = static_cast<double>(n) * g.dt;
      if (scheme == "temporal")
        u = predictor_corrector_step(u, DiffusionModel::constant(d), {}, sc, t, g.dt);
      else if (scheme == "spatial-ode")
        u = spatial_step_1d(u, d, 0.0, {}, t, g.dt);
      else if (scheme == "classic-implicit")
        u = classic_implicit_step_1d(u, DiffusionModel::constant(d), g.dt);
      else
        u = ftcs_step_1d(u, d, g.dt);
    }
    const double t_end = static_cast<double>(g.steps) * g.dt;
    double err = 0.0;
    for (std::size_t i = 0; i < u.grid.nx; ++i)
      err = std::max(err, std::abs(u.u[i] - std::exp(-d * k * k * t_end) * std::sin(k * u.grid.x(i))));
    hs.push_back(ladder.param == "dx" ? u.grid.dx : g.dt);
    errs.push_back(err);
    if (r == 0) {
      out.field("diffuse1d_field.csv", u);
      out.metric("error", err);
    }
  }
  if (plan.size() > 1) {
    const auto lr = convergence_orders(hs, errs);
    auto os = out.open("diffuse1d_ladder.csv");
    os << ladder.param << ",error,order\n";
    for (std::size_t r = 0; r < hs.size(); ++r)
      os << csv_num(hs[r]) << ',' << csv_num(errs[r]) << ',' << (r ? csv_num(lr.orders[r - 1]) : "") << '\n';
    out.metric("fitted_order", lr.fitted_order);
    out.metric("monotone", lr.monotone ? 1.0 : 0.0);
  }
}

void run_particles_experiment(const RunConfig& cfg, Output& out) {
  ParticleConfig pc;
  pc.beta = cfg.num("beta");
  pc.k = cfg.num("k");
  pc.d0 = cfg.num("d0");
  pc.s = cfg.num("s");
  pc.nx = or_default(cfg.count("nx"), std::size_t{200});
  pc.dt = or_default(cfg.num("dt"), 0.01);
  pc.wind_mode = cfg.str("wind") == "fixed" ? WindMode::fixed : WindMode::per_step;
  pc.ref_substeps = cfg.count("ref_substeps");
  pc.corrector_cap = cap_of(cfg, 20);
  const auto scheme = parse_particle_scheme(cfg.str("scheme").empty() ? "sadm-K3" : cfg.str("scheme"));
  const std::size_t steps = or_default(cfg.count("steps"), std::size_t{100});
  const std::size_t keep = cfg.count("keep_every");
  const auto run = run_particles_2d(pc, scheme, steps, labeled_seed(cfg.seed(), "wind"), keep);
  out.field("particles_final.csv", run.final);
  for (std::size_t h = 1; h < run.history.size(); ++h)
    out.field("particles_step" + std::to_string(h * keep) + ".csv", run.history[h]);
  double mass = 0.0, hi = 0.0, lo = 0.0;
  for (double v : run.final.u) {
    mass += v;
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  out.metric("mass", mass * run.final.grid.dx * run.final.grid.dy);
  out.metric("max", hi);
  out.metric("min", lo);
}

void run_navier_stokes_experiment(const RunConfig& cfg, Output& out) {
  BackStepConfig bc;
  bc.u_inlet = cfg.num("u_inlet");
  bc.u1 = cfg.num("u1");
  bc.u2 = cfg.num("u2");
  bc.h1 = cfg.num("h1");
  bc.h2 = cfg.num("h2");
  bc.re = cfg.num("re");
  bc.aspect = cfg.num("aspect");
  bc.step_length = cfg.num("step_length");
  validate(bc);
  const std::size_t nx = or_default(cfg.count("nx"), std::size_t{201});
  const std::size_t ny = or_default(cfg.count("ny"), std::size_t{21});
  BackstepOptions opt;
  opt.dt = or_default(cfg.num("dt"), 0.01);
  opt.adi_form = cfg.str("adi_form") == "central" ? AdiForm::central : AdiForm::literal;
  opt.tolerance = cfg.num("ns_tolerance");
  opt.max_steps = cfg.count("max_steps");
  opt.psi_iterations = cfg.integer("psi_iterations");

  const std::string scheme = cfg.str("scheme").empty() ? "both" : cfg.str("scheme");
  std::vector<NsScheme> schemes;
  if (scheme == "both" || scheme == "directional") schemes.push_back(NsScheme::directional);
  if (scheme == "both" || scheme == "adi") schemes.push_back(NsScheme::adi);
  if (schemes.empty()) throw ConfigError("key 'scheme': navier-stokes takes directional, adi or both");

  std::vector<double> sections;
  for (const auto& v : cfg.values.at("sections")) sections.push_back(v.get<double>());
  if (sections.empty())
    for (int i = 1; i <= 3; ++i) sections.push_back(i * bc.aspect / 4.0);

  for (auto s : schemes) {
    opt.scheme = s;
    const auto run = run_backstep(bc, nx, ny, opt);
    const std::string name = to_string(s);
    {
      auto os = out.open("metric_" + name + ".csv");
      os << "step,t,metric\n";
      for (std::size_t n = 0; n < run.metric.size(); ++n)
        os << n + 1 << ',' << csv_num(static_cast<double>(n + 1) * opt.dt) << ',' << csv_num(run.metric[n]) << '\n';
    }
    {
      auto os = out.open("profile_" + name + ".csv");
      os << "x_c,y,u\n";
      for (const auto& r : cross_section_profiles(run.state, sections))
        os << csv_num(r.x_c) << ',' << csv_num(r.y) << ',' << csv_num(r.u) << '\n';
    }
    Field2D psi(run.state.grid);
    psi.u = run.state.psi;
    out.field("psi_" + name + ".csv", psi);
    out.metric("steps." + name, static_cast<double>(run.steps));
    out.metric("reached." + name, run.reached_tolerance ? 1.0 : 0.0);
    out.metric("diverged." + name, run.diverged ? 1.0 : 0.0);
    out.metric("final_metric." + name, run.metric.empty() ? 0.0 : run.metric.back());
  }
}

void run_stochastic_experiment(const RunConfig& cfg, Output& out) {
  const UniformDiffusion dist{cfg.num("lower"), cfg.num("upper")};
  const std::size_t nx = or_default(cfg.count("nx"), std::size_t{21});
  const double dt = or_default(cfg.num("dt"), 1e-3);
  const int m = cfg.integer("mode");
  const Field1D u = sample_function(build_grid_1d(1.0, nx), [m](double x) { return std::sin(m * std::numbers::pi * x); });
  const double unit = 1.0 / (u.grid.dx * u.grid.dx);

  std::vector<double> exact(nx, 0.0);
  for (std::size_t i = 1; i + 1 < nx; ++i)
    exact[i] = expected_update_p0(u.u[i], unit * (u.u[i - 1] + u.u[i + 1]), unit, dist, dt);
  exact.front() = u.u.front();
  exact.back() = u.u.back();

  const std::uint64_t base = labeled_seed(cfg.seed(), "monte-carlo");
  auto table = out.open("stochastic_ladder.csv");
  table << "samples,error,mean_std_error\n";
  std::vector<double> sampled;
  for (const auto& entry : cfg.values.at("samples")) {
    const auto n = static_cast<std::size_t>(entry.get<double>());
    sampled = exact;
    double se = 0.0;
    for (std::size_t i = 1; i + 1 < nx; ++i) {
      const double ui = u.u[i], nb = unit * (u.u[i - 1] + u.u[i + 1]);
      const auto mc = monte_carlo_expectation(
          [&](double d) { return deterministic_update(ui, NeighborPolynomial::constant(nb, dt), 0.0, unit, d, dt); },
          dist, n, derive_seed(derive_seed(base, n), i));
      sampled[i] = mc.mean;
      se += mc.std_error;
    }
    se /= static_cast<double>(nx - 2);
    const double err = average_error_metric(sampled, exact, 1.0);
    table << n << ',' << csv_num(err) << ',' << csv_num(se) << '\n';
    out.metric("error." + std::to_string(n), err);
  }
  auto os = out.open("stochastic_expected.csv");
  os << "x,formula,sampled\n";
  for (std::size_t i = 0; i < nx; ++i)
    os << csv_num(u.grid.x(i)) << ',' << csv_num(exact[i]) << ',' << csv_num(sampled[i]) << '\n';
}

void run_stability_experiment(const RunConfig& cfg, Output& out) {
  std::mt19937_64 rng(labeled_seed(cfg.seed(), "stability"));
  std::uniform_real_distribution<double> dd(0.1, 5.0), dxd(0.01, 1.0), uni(-1.0, 1.0);
  const std::size_t trials = cfg.count("trials");
  auto os = out.open("stability.csv");
  os << "order,max_rel_err,pass\n";
  for (int order = 0; order <= 2; ++order) {
    double worst = 0.0;
    for (std::size_t k = 0; k < trials; ++k) {
      const double d = dd(rng), dx = dxd(rng);
      const double abar = d / (dx * dx), dt = 1e6 / abar;
      const double level = 5.0 * uni(rng);
      const auto t = sampling_nodes(order, dt, Sampling::uniform);
      std::vector<double> v(t.size());
      for (double& x : v) x = level * (1.0 + 0.05 * uni(rng)) / (dx * dx);
      const auto p = solve_polynomial_coeffs(t, v);
      const DiffusionUpdateParams prm{abar, 0.0, 2.0 * uni(rng)};
      const double a = closed_form_update(prm, p, d, dt), b = asymptotic_limit(prm, p, d, order);
      worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
    }
    const bool pass = worst < 1e-6;
    os << order << ',' << csv_num(worst) << ',' << (pass ? 1 : 0) << '\n';
    out.metric("max_rel_err.p" + std::to_string(order), worst);
    out.metric("pass.p" + std::to_string(order), pass ? 1.0 : 0.0);
  }
}

void run_split_order_experiment(const RunConfig& cfg, Output& out) {
  LinearAdeSetup setup;
  setup.c = cfg.num("c");
  setup.d = or_default(cfg.num("d"), 0.1);
  setup.mode = cfg.integer("mode");
  setup.nx = or_default(cfg.count("nx"), std::size_t{201});
  setup.horizon = or_default(cfg.num("horizon"), 0.4);
  setup.interpolation = interpolation_of(cfg, Interpolation::cubic);
  setup.diffusion_order = cfg.integer("order");
  setup.corrector_cap = cap_of(cfg, 2000);
  const double dt = or_default(cfg.num("dt"), 0.05);
  const auto ladder = parse_ladder(cfg.str("ladder"), "dt:4");
  if (ladder.param != "dt") throw ConfigError("split-order ladders run over dt");
  const std::string scheme = cfg.str("scheme").empty() ? "both" : cfg.str("scheme");
  std::vector<std::pair<std::string, bool>> kinds;
  if (scheme == "both" || scheme == "lie") kinds.emplace_back("lie", false);
  if (scheme == "both" || scheme == "strang") kinds.emplace_back("strang", true);
  if (kinds.empty()) throw ConfigError("key 'scheme': split-order takes lie, strang or both");

  auto os = out.open("split_order.csv");
  os << "splitting,dt,error,order\n";
  for (const auto& [name, strang] : kinds) {
    std::vector<double> hs, errs;
    for (const auto& r : rungs(ladder, setup.nx, dt, 1, false)) {
      hs.push_back(r.dt);
      errs.push_back(linear_ade_split_error(setup, strang, r.dt));
    }
    const auto lr = convergence_orders(hs, errs);
    for (std::size_t k = 0; k < hs.size(); ++k)
      os << name << ',' << csv_num(hs[k]) << ',' << csv_num(errs[k]) << ',' << (k ? csv_num(lr.orders[k - 1]) : "")
         << '\n';
    out.metric("order." + name, lr.fitted_order);
    out.metric("monotone." + name, lr.monotone ? 1.0 : 0.0);
  }
}

}  // namespace

std::uint64_t labeled_seed(std::uint64_t master, const std::string& label) {
  // FNV-1a of the label, then the library's seed mixer.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return derive_seed(master, h);
}

RunManifest dispatch(const RunConfig& cfg, const fs::path& out_dir) {
  RunManifest m;
  m.config_echo = cfg.values.dump();
  m.problem = cfg.problem();
  m.seed = cfg.seed();
  fs::create_directories(out_dir);
  Output out{out_dir, m};
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&] {
    m.duration_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream os(out_dir / "manifest.txt", std::ios::binary);
    os << manifest_text(m);
  };
  try {
    const std::string p = m.problem;
    if (p == "burgers") run_burgers_experiment(cfg, out);
    else if (p == "diffuse1d") run_diffuse_experiment(cfg, out);
    else if (p == "particles2d") run_particles_experiment(cfg, out);
    else if (p == "navier-stokes") run_navier_stokes_experiment(cfg, out);
    else if (p == "stochastic") run_stochastic_experiment(cfg, out);
    else if (p == "stability-check") run_stability_experiment(cfg, out);
    else if (p == "split-order") run_split_order_experiment(cfg, out);
    else throw ConfigError("unknown problem '" + p + "'");
  } catch (const std::exception& e) {
    m.ok = false;
    m.error = e.what();
    finish();
    throw;
  }
  finish();
  return m;
}

}  // namespace dirode::cli
