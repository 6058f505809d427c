#include <algorithm>
#include <cmath>
#include <numbers>

#include "dirode/baselines.hpp"
#include "dirode/errors.hpp"
#include "dirode/problems.hpp"
#include "doctest.h"

using namespace dirode;

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double mean_sq_diff(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  double acc = 0.0;
  std::size_t n = 0;
  for (std::size_t s = 1; s < a.size(); ++s)
    for (std::size_t i = 0; i < a[s].size(); ++i, ++n) acc += (a[s][i] - b[s][i]) * (a[s][i] - b[s][i]);
  return acc / static_cast<double>(n);
}

}  // namespace

TEST_CASE("burgers analytic solution") {
  const double nu = 0.005;
  for (double t : {1e-3, 0.05, 0.3}) {
    CHECK(std::abs(burgers_analytic(0.0, t, nu)) < 1e-12);
    CHECK(std::abs(burgers_analytic(1.0, t, nu)) < 1e-12);
    CHECK(std::abs(burgers_analytic(-1.0, t, nu)) < 1e-12);
    for (double x : {0.1, 0.37, 0.5, 0.8, 0.99}) {
      const double u = burgers_analytic(x, t, nu);
      CHECK(std::abs(u + burgers_analytic(-x, t, nu)) < 1e-10);
      CHECK(std::abs(u) <= 1.0);
    }
  }
  CHECK(burgers_analytic(0.5, 1e-4, nu) == doctest::Approx(-1.0).epsilon(1e-2));
  CHECK(burgers_analytic(0.3, 0.02, 0.5) ==
        doctest::Approx(-std::exp(-std::numbers::pi * std::numbers::pi * 0.5 * 0.02) *
                        std::sin(std::numbers::pi * 0.3)).epsilon(2e-2));
  CHECK_THROWS_AS(burgers_analytic(0.5, 0.0, nu), ValidationError);
  CHECK_THROWS_AS(burgers_analytic(0.5, 0.1, 0.0), ValidationError);
}

TEST_CASE("burgers quadrature self-check") {
  BurgersQuadrature fine;
  fine.panels = 800;
  for (double x : {-0.6, 0.2, 0.45, 0.9})
    CHECK(std::abs(burgers_analytic(x, 0.1, 0.005) - burgers_analytic(x, 0.1, 0.005, fine)) < 1e-8);
}

TEST_CASE("averaged error metric") {
  const std::vector<std::vector<double>> a{{0.0, 1.0, 2.0}, {3.0, 4.0, 5.0}};
  CHECK(burgers_averaged_error(a, a) == 0.0);
  auto b = a;
  for (auto& row : b)
    for (double& v : row) v += 0.01;
  CHECK(burgers_averaged_error(b, a) == doctest::Approx(1e-4).epsilon(1e-10));
  CHECK_THROWS_AS(burgers_averaged_error({{0.0}}, a), ValidationError);
  CHECK_THROWS_AS(burgers_averaged_error({{0.0}, {1.0}}, a), ValidationError);
}

TEST_CASE("burgers scheme names round-trip") {
  for (auto s : all_burgers_schemes()) CHECK(parse_burgers_scheme(to_string(s)) == s);
  CHECK(all_burgers_schemes().size() == 5);
  CHECK_THROWS_AS(parse_burgers_scheme("upwind"), ValidationError);
}

TEST_CASE("viscous burgers decays") {
  const auto run = run_burgers(BurgersScheme::temporal_p0, 41, 1e-4, 10.0, 500);
  for (std::size_t n = 1; n < run.fields.size(); ++n)
    CHECK(max_abs(run.fields[n]) <= max_abs(run.fields[n - 1]) + 1e-14);
  CHECK(max_abs(run.fields.back()) < 0.05);
}

TEST_CASE("burgers schemes agree in the consistency regime") {
  const double nu = 0.005;
  const std::size_t nx = 41;
  const double dx = 2.0 / 40, dt = 0.1 * dx * dx / nu;
  const Grid1D g = build_grid_1d(2.0, nx, -1.0);
  const auto table = burgers_analytic_table(g, dt, 10, nu);
  std::vector<BurgersRun> runs;
  double worst = 0.0;
  for (auto s : all_burgers_schemes()) {
    runs.push_back(run_burgers(s, nx, dt, nu, 10, {}, &table));
    CHECK(std::isfinite(runs.back().error));
    worst = std::max(worst, runs.back().error);
  }
  for (std::size_t a = 0; a < runs.size(); ++a)
    for (std::size_t b = a + 1; b < runs.size(); ++b)
      CHECK(mean_sq_diff(runs[a].fields, runs[b].fields) <= 5.0 * worst);
  const double spatial = runs[1].error, classic = runs[0].error;
  CHECK(spatial <= 1.05 * classic);
}

TEST_CASE("wind field") {
  WindField2D w{1.0, WindMode::per_step, 99};
  const auto d0 = w.draw(0), d1 = w.draw(1);
  CHECK(d0.ry1 != d1.ry1);
  CHECK(w.draw(0).rx2 == d0.rx2);
  WindField2D f{1.0, WindMode::fixed, 99};
  CHECK(f.draw(0).ry1 == f.draw(7).ry1);
  const auto z = WindField2D{0.0, WindMode::per_step, 99}.draw(3);
  CHECK(z.ry1 == 0.0);
  CHECK(z.rx2 == 0.0);

  for (std::size_t step = 0; step < 5; ++step) {
    const auto v = WindField2D::velocity(1.0, w.draw(step));
    const double h = 1e-5;
    for (double x : {0.1, 1.3, 2.9, 5.0})
      for (double y : {0.4, 2.2, 4.1}) {
        const double div = (v.vx(x + h, y, 0, 0) - v.vx(x - h, y, 0, 0)) / (2 * h) +
                           (v.vy(x, y + h, 0, 0) - v.vy(x, y - h, 0, 0)) / (2 * h);
        CHECK(std::abs(div) < 1e-8);
      }
  }
  const auto calm = WindField2D::velocity(0.0, {});
  CHECK(calm.vx(0.0, 0.0, 0, 0) == doctest::Approx(1.0));
  CHECK(calm.vy(0.0, std::numbers::pi / 2, 0, 0) == doctest::Approx(1.0));
}

TEST_CASE("particle initial field") {
  ParticleConfig cfg;
  cfg.nx = 100;
  const Field2D f = particle_initial_field(cfg);
  double mass = 0.0;
  for (double v : f.u) {
    CHECK((v == 0.0 || v == cfg.value));
    mass += v;
  }
  CHECK(mass > 0.0);
  for (std::size_t i = 0; i < f.grid.nx; ++i) {
    CHECK(f.at(i, 0) == 0.0);
    CHECK(f.at(i, f.grid.ny - 1) == 0.0);
  }
  cfg.beta = -1.0;
  CHECK_THROWS_AS(particle_initial_field(cfg), ValidationError);
  CHECK(parse_particle_scheme("sadm-K3") == ParticleScheme::sadm_k3);
  CHECK(parse_particle_scheme(to_string(ParticleScheme::temporal_p2_loop_ref)) ==
        ParticleScheme::temporal_p2_loop_ref);
  CHECK_THROWS_AS(parse_particle_scheme("k3"), ValidationError);
}

TEST_CASE("particle runs") {
  ParticleConfig cfg;
  cfg.nx = 40;
  cfg.beta = 0.0;
  cfg.s = 0.0;
  cfg.value = 0.0;
  for (double v : run_particles_2d(cfg, ParticleScheme::temporal_p0, 5, 1).final.u) CHECK(v == 0.0);

  cfg.value = 0.01;
  const auto hull = run_particles_2d(cfg, ParticleScheme::temporal_p0, 20, 1, 1);
  for (const auto& f : hull.history)
    for (double v : f.u) {
      CHECK(v >= -1e-15);
      CHECK(v <= cfg.value + 1e-15);
    }

  // The P = 0 diffusion step alone never creates mass.
  cfg.d0 = 0.05;
  Field2D f = particle_initial_field(cfg);
  double prev = 0.0;
  for (double v : f.u) prev += v;
  for (int n = 0; n < 20; ++n) {
    f = particle_diffusion_step(f, cfg, ParticleScheme::temporal_p0, 0.01 * n, 0.01);
    double mass = 0.0;
    for (double v : f.u) mass += v;
    CHECK(mass <= prev * (1 + 1e-12));
    prev = mass;
  }

  ParticleConfig noisy;
  noisy.nx = 40;
  noisy.k = 1.0;
  noisy.beta = 10.0;
  const auto run = run_particles_2d(noisy, ParticleScheme::sadm_k3, 500, 2024);
  for (double v : run.final.u) CHECK(std::isfinite(v));
  CHECK(max_abs(run.final.u) < 1.0);
  const auto again = run_particles_2d(noisy, ParticleScheme::sadm_k3, 500, 2024);
  CHECK(again.final.u == run.final.u);
}

TEST_CASE("linear ADE mode") {
  CHECK(linear_ade_exact(0.7, 0.3, 2, 0.3, 0.0) == doctest::Approx(std::sin(2 * std::numbers::pi * 0.3)));
  CHECK(linear_ade_exact(0.0, 0.3, 1, 0.4, 0.5) ==
        doctest::Approx(std::exp(-0.3 * std::numbers::pi * std::numbers::pi * 0.5) * std::sin(std::numbers::pi * 0.4)));
  CHECK(linear_ade_exact(0.5, 0.0, 3, 0.4, 0.2) == doctest::Approx(std::sin(3 * std::numbers::pi * 0.3)));
}

TEST_CASE("nonlinear implicit comparison") {
  const Grid1D g = build_grid_1d(1.0, 51);
  Field1D init = sample_function(g, [](double x) { return std::sin(std::numbers::pi * x); });
  init.bc = {0.0, 0.0};
  const double lambda_dt = g.dx * g.dx;

  const NonlinearLaw flat{[](double) { return 1.0; }, [](double) { return 0.0; }};
  const auto c = compare_nonlinear_implicit(flat, init, lambda_dt, 100);
  CHECK(*std::max_element(c.divergence.begin(), c.divergence.end()) <= 1e-12);

  const NonlinearLaw mild{[](double u) { return 1.0 + 0.1 * u; }, [](double) { return 0.1; }};
  const auto m = compare_nonlinear_implicit(mild, init, lambda_dt / 1.1, 100);
  CHECK(m.full_bounded);
  CHECK(m.split_bounded);
  CHECK(*std::max_element(m.divergence.begin(), m.divergence.end()) < 1e-3);

  const NonlinearLaw strong{[](double u) { return std::exp(5 * u); }, [](double u) { return 5 * std::exp(5 * u); }};
  const auto s = compare_nonlinear_implicit(strong, init, 10 * lambda_dt, 100);
  CHECK(s.split_bounded);
  CHECK(s.split_max <= 1.0 + 1e-12);
  MESSAGE("strong law: full bounded " << s.full_bounded << ", full max " << s.full_max);

  CHECK_THROWS_AS(compare_nonlinear_implicit({}, init, 0.1, 1), ValidationError);
}

TEST_CASE("baseline steps") {
  const Grid1D g = build_grid_1d(1.0, 21);
  Field1D f = sample_function(g, [](double x) { return std::sin(std::numbers::pi * x); });
  f.bc = {0.0, 0.0};
  const double lambda = 5.0, dt = lambda * g.dx * g.dx;
  const double s = std::sin(std::numbers::pi * g.dx / 2);
  const Field1D imp = classic_implicit_step_1d(f, DiffusionModel::constant(1.0), dt);
  for (std::size_t i = 0; i < g.nx; ++i)
    CHECK(imp.u[i] == doctest::Approx(f.u[i] / (1 + 4 * lambda * s * s)).epsilon(1e-12));

  Field1D e = f;
  e.u[10] += 1e-6;
  for (int n = 0; n < 100; ++n) e = ftcs_step_1d(e, 1.0, dt);
  CHECK(max_abs(e.u) > 1e3);
}
