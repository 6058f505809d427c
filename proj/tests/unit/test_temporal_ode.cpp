#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dirode/errors.hpp"
#include "dirode/temporal_ode.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace dirode;

namespace {

NeighborPolynomial random_poly(std::mt19937_64& rng, int order, double dt) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  NeighborPolynomial p;
  p.order = order;
  p.dt = dt;
  for (int k = 0; k <= order; ++k) p.a[k] = coef(rng) / std::pow(dt, k);
  return p;
}

Field1D sine_field(std::size_t nx) {
  return sample_function(build_grid_1d(1.0, nx),
                         [](double x) { return std::sin(std::numbers::pi * x); });
}

}  // namespace

TEST_CASE("sampling nodes") {
  CHECK(sampling_nodes(2, 1.0, Sampling::uniform) == std::vector<double>{0, 0.5, 1});
  CHECK(sampling_nodes(1, 1.0, Sampling::uniform) == std::vector<double>{0, 1});
  const auto c = sampling_nodes(2, 1.0, Sampling::chebyshev);
  CHECK(c[0] == 0.0);
  CHECK(c[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c[2] == 1.0);
  for (int p = 1; p <= kMaxOrder; ++p)
    for (auto fam : {Sampling::uniform, Sampling::chebyshev}) {
      const auto t = sampling_nodes(p, 0.3, fam);
      REQUIRE(t.size() == static_cast<std::size_t>(p + 1));
      CHECK(t.front() == 0.0);
      CHECK(t.back() == 0.3);
      for (int k = 1; k <= p; ++k) CHECK(t[k] > t[k - 1]);
    }
  CHECK_THROWS_AS(sampling_nodes(kMaxOrder + 1, 1.0, Sampling::uniform), ValidationError);
}

TEST_CASE("polynomial coefficients from samples") {
  const double dt = 0.37;
  const double un = 1.3, uh = -0.4, u1 = 2.9;
  {
    const std::vector<double> t{0, dt}, v{un, u1};
    const auto p = solve_polynomial_coeffs(t, v);
    CHECK(p.a[0] == doctest::Approx(un).epsilon(1e-12));
    CHECK(p.a[1] == doctest::Approx((u1 - un) / dt).epsilon(1e-12));
  }
  {
    const std::vector<double> t{0, dt / 2, dt}, v{un, uh, u1};
    const auto p = solve_polynomial_coeffs(t, v);
    CHECK(p.a[0] == doctest::Approx(un).epsilon(1e-12));
    CHECK(p.a[1] == doctest::Approx((-3 * un + 4 * uh - u1) / dt).epsilon(1e-12));
    CHECK(p.a[2] == doctest::Approx((2 * un - 4 * uh + 2 * u1) / (dt * dt)).epsilon(1e-12));
  }
  {
    const std::vector<double> t{0, 0.1, 0.2, 0.4}, v(4, 5.5);
    const auto p = solve_polynomial_coeffs(t, v);
    CHECK(p.a[0] == doctest::Approx(5.5));
    for (int k = 1; k <= 3; ++k) CHECK(std::abs(p.a[k]) < 1e-9);
  }
  {
    const std::vector<double> t{0, 0.5, 0.5}, v{1, 2, 3};
    CHECK_THROWS_AS(solve_polynomial_coeffs(t, v), NumericalError);
  }
}

TEST_CASE("vandermonde fit residual and dt scaling") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  for (int order = 1; order <= 6; ++order)
    for (auto fam : {Sampling::uniform, Sampling::chebyshev}) {
      const double dt = 1e-3;
      const auto t1 = sampling_nodes(order, dt, fam);
      const auto t2 = sampling_nodes(order, 2 * dt, fam);
      std::vector<double> v(order + 1);
      for (double& x : v) x = val(rng);
      const auto p1 = solve_polynomial_coeffs(t1, v);
      const auto p2 = solve_polynomial_coeffs(t2, v);
      double vmax = 0.0;
      for (double x : v) vmax = std::max(vmax, std::abs(x));
      for (std::size_t k = 0; k < t1.size(); ++k) CHECK(std::abs(p1(t1[k]) - v[k]) <= 1e-10 * vmax);
      for (int p = 0; p <= order; ++p)
        CHECK(p2.a[p] == doctest::Approx(p1.a[p] / std::pow(2.0, p)).epsilon(1e-10));
    }
}

TEST_CASE("normalized inverse vandermonde, low orders") {
  const auto m0 = normalized_vandermonde_inverse(0, Sampling::uniform);
  CHECK(m0(0, 0) == 1.0);
  const auto m1 = normalized_vandermonde_inverse(1, Sampling::uniform);
  const double e1[2][2] = {{1, 0}, {-1, 1}};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) CHECK(m1(r, c) == doctest::Approx(e1[r][c]).epsilon(1e-12));
  const auto m2 = normalized_vandermonde_inverse(2, Sampling::uniform);
  const double e2[3][3] = {{1, 0, 0}, {-3, 4, -1}, {2, -4, 2}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(m2(r, c) == doctest::Approx(e2[r][c]).epsilon(1e-12));
}

TEST_CASE("closed form update examples") {
  const auto p2 = NeighborPolynomial::constant(2.0);
  CHECK(closed_form_update({1.0, 0.0, 0.0}, p2, 1.0, 0.1) ==
        doctest::Approx(1.0 - std::exp(-0.2)).epsilon(1e-14));
  CHECK(closed_form_update({1.0, 0.0, 0.0}, p2, 1.0, 1e3) == doctest::Approx(1.0));
  // fixed point: D U / (2 abar) = c
  const double c = 0.7, dx = 0.2, d = 3.0;
  const double abar = d / (dx * dx);
  const auto pc = NeighborPolynomial::constant(2.0 * c / (dx * dx));
  for (double tau : {0.0, 1e-4, 0.1, 10.0})
    CHECK(closed_form_update({abar, 0.0, c}, pc, d, tau) == doctest::Approx(c).epsilon(1e-14));
  CHECK_THROWS_AS(closed_form_update({0.0, 0.0, c}, pc, d, 0.1), ValidationError);
  CHECK(closed_form_update({1.0, 0.0, 0.0}, p2, 1.0, 0.1) ==
        doctest::Approx(oracle::rk4([](double, double u) { return 2.0 - 2.0 * u; }, 0.0, 0.1, 200))
            .epsilon(1e-10));
}

TEST_CASE("closed form update is exact at tau = 0") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ab(0.1, 100.0), uni(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int order = trial % 5;
    const auto p = random_poly(rng, order, 0.05);
    const double center = uni(rng);
    const double v = closed_form_update({ab(rng), uni(rng), center}, p, ab(rng), 0.0);
    CHECK(std::abs(v - center) <= 1e-14 * std::max(1.0, std::abs(center)) + 1e-14);
  }
}

TEST_CASE("closed form update equals RK4 of its ODE") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ab(0.1, 100.0), uni(-1.0, 1.0), dd(0.1, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int order = trial % 4;
    const double abar = ab(rng), d = dd(rng), s = uni(rng), u0 = uni(rng);
    const double dt = 0.5 / abar * (1.0 + 3.0 * std::abs(uni(rng)));
    const auto p = random_poly(rng, order, dt);
    const double ref = oracle::rk4(
        [&](double tau, double u) {
          double poly = 0.0;
          for (int k = order; k >= 0; --k) poly = poly * tau + p.a[k];
          return d * poly - 2.0 * abar * u + s;
        },
        u0, dt, 4000);
    CHECK(oracle::rel_err(closed_form_update({abar, s, u0}, p, d, dt), ref) < 1e-8);
  }
}

TEST_CASE("asymptotic limits") {
  CHECK(asymptotic_limit({1.0, 0.0, 0.0}, NeighborPolynomial::constant(2.0), 1.0, 0) == 1.0);
  NeighborPolynomial p1;
  p1.order = 1;
  p1.dt = 1.0;
  p1.a = {0.0, 2.0};
  CHECK(asymptotic_limit({1.0, 0.0, 0.0}, p1, 1.0, 1) == doctest::Approx(1.0));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dd(0.1, 5.0), dxd(0.01, 1.0), uni(-2.0, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int order = trial % 3;
    const double d = dd(rng), dx = dxd(rng);
    const double abar = d / (dx * dx);
    const double dt = 1e6 / abar;
    // The gap to the limit is |U'(dt)| dt / (2 abar dt |U(dt)|), so neighbour data vary by
    // at most 10% around a random level.
    const double level = uni(rng) * 5.0;
    std::vector<double> t = sampling_nodes(order, dt, Sampling::uniform), v(t.size());
    for (double& x : v) x = level * (1.0 + 0.05 * uni(rng)) / (dx * dx);
    const auto p = solve_polynomial_coeffs(t, v);
    const DiffusionUpdateParams prm{abar, 0.0, uni(rng)};
    CHECK(oracle::rel_err(closed_form_update(prm, p, d, dt), asymptotic_limit(prm, p, d, order)) <
          1e-6);
  }
}

TEST_CASE("wave advection update") {
  CHECK(wave_advection_update(2.5, 2.5, 2.5, 1.7, 0.1, 0.3) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(wave_advection_update(1.0, 3.0, -4.0, 0.0, 0.1, 0.3) == 1.0);
  const double c = 1.0, dx = 0.1, dt = 0.01;
  const double ul = 0.3, u = 0.2, ur = 0.1;
  const double a = 2 * c * c / (dx * dx), b = c * c * (ul + ur) / (dx * dx);
  const double ref = oracle::rk4_second_order([&](double, double y, double) { return -a * y + b; },
                                              u, -c * (ur - ul) / (2 * dx), dt, 2000)
                         .first;
  CHECK(std::abs(wave_advection_update(u, ul, ur, c, dx, dt) - ref) < 1e-8);
  // the literal form drops c^2 from the forcing
  CHECK(wave_advection_update(u, ul, ur, 2.0, dx, dt, true) !=
        doctest::Approx(wave_advection_update(u, ul, ur, 2.0, dx, dt)));
}

TEST_CASE("no-splitting switching update") {
  for (double c : {-2.0, -0.1, 0.5, 3.0})
    CHECK(nonsplit_switching_update(1.25, 1.25, 1.25, c, 0.2, 0.1, 0.7) ==
          doctest::Approx(1.25).epsilon(1e-14));
  const double d = 0.1, dx = 0.1;
  const double lim = (d * (1.0 + 0.0) / (dx * dx) + 1.0 * 1.0 / dx) / (2 * d / (dx * dx) + 1.0 / dx);
  CHECK(nonsplit_switching_update(0.0, 1.0, 0.0, 1.0, d, dx, 1e3) == doctest::Approx(lim));
  const double ref = oracle::rk4(
      [&](double, double u) { return -1.0 * (u - 1.0) / dx + d * (1.0 - 2 * u + 0.0) / (dx * dx); },
      0.0, 0.05, 4000);
  CHECK(std::abs(nonsplit_switching_update(0.0, 1.0, 0.0, 1.0, d, dx, 0.05) - ref) < 1e-10);
  const double ref_neg = oracle::rk4(
      [&](double, double u) { return 1.0 * (0.0 - u) / dx + d * (1.0 - 2 * u + 0.0) / (dx * dx); },
      0.5, 0.05, 4000);
  CHECK(std::abs(nonsplit_switching_update(0.5, 1.0, 0.0, -1.0, d, dx, 0.05) - ref_neg) < 1e-10);
}

TEST_CASE("zeroth-order stability check") {
  auto law = [](double u) { return 1.0 / (1.0 + u); };
  auto v = zeroth_order_stability_check(law, 0.0, 2.0, 0.1);
  CHECK(v.u_star == 1.0);
  CHECK(v.stable);
  v = zeroth_order_stability_check(law, 0.4, 0.4, 0.1);
  CHECK(v.u_star == 0.4);
  CHECK(v.stable);
  v = zeroth_order_stability_check([](double) { return -1.0; }, 0.0, 2.0, 0.1);
  CHECK_FALSE(v.stable);
  v = zeroth_order_stability_check([](double) { return 0.0; }, 0.0, 2.0, 0.1);
  CHECK_FALSE(v.stable);
}

TEST_CASE("predictor corrector structure") {
  Field1D zero(build_grid_1d(1.0, 21), 0.0);
  const auto z = predictor_corrector_step(zero, DiffusionModel::constant(1.0), {},
                                          {2, Sampling::uniform, 20, 1e-10}, 0.0, 0.01);
  for (double v : z.u) CHECK(v == 0.0);

  const Field1D f = sine_field(21);
  const double dt = 0.013, d = 0.8;
  const auto p0 = predictor_corrector_step(f, DiffusionModel::constant(d), {},
                                           {0, Sampling::uniform, 0, 1e-10}, 0.0, dt);
  const double abar = d / (f.grid.dx * f.grid.dx);
  for (std::size_t i = 1; i + 1 < f.grid.nx; ++i) {
    const double w = 1.0 / (f.grid.dx * f.grid.dx);
    const auto poly = NeighborPolynomial::constant(w * (f.u[i - 1] + f.u[i + 1]));
    CHECK(p0.u[i] == closed_form_update({abar, 0.0, f.u[i]}, poly, d, dt));
  }
  CHECK(p0.u.front() == 0.0);
  CHECK(std::abs(p0.u.back()) < 1e-15);
}

TEST_CASE("P = 2 loop-corrected heat step tracks the exact decay") {
  Field1D f = sine_field(101);
  const double dt = 0.01;
  for (int n = 0; n < 10; ++n)
    f = predictor_corrector_step(f, DiffusionModel::constant(1.0), {},
                                 {2, Sampling::uniform, 5000, 1e-10}, n * dt, dt);
  const double decay = std::exp(-std::numbers::pi * std::numbers::pi * 0.1);
  double err = 0.0;
  for (std::size_t i = 0; i < f.grid.nx; ++i)
    err = std::max(err, std::abs(f.u[i] - decay * std::sin(std::numbers::pi * f.grid.x(i))));
  CHECK(err < 1e-3);
}

TEST_CASE("corrector iterates converge") {
  // Changes shrink overall but not monotonically: the max-norm change can bounce while
  // the slow mode settles.
  for (double lambda : {0.5, 2.0, 10.0}) {
    const Field1D f = sine_field(41);
    const double dt = lambda * f.grid.dx * f.grid.dx;
    CorrectorStats stats;
    predictor_corrector_step(f, DiffusionModel::constant(1.0), {}, {2, Sampling::uniform, 2000, 1e-12},
                             0.0, dt, &stats);
    REQUIRE(!stats.changes.empty());
    CHECK(stats.last_change < 1e-12);
    CHECK(stats.iterations < 2000);
  }
}

TEST_CASE("P = 0 respects the maximum principle for any step") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Field1D f(build_grid_1d(1.0, 31));
  for (double& v : f.u) v = uni(rng);
  capture_boundary(f);
  const auto [lo, hi] = std::minmax_element(f.u.begin(), f.u.end());
  const double a = *lo, b = *hi;
  for (double dt : {1e-4, 1e-2, 1.0, 1e4}) {
    Field1D g = f;
    for (int n = 0; n < 50; ++n)
      g = predictor_corrector_step(g, DiffusionModel::constant(2.0), {},
                                   {0, Sampling::uniform, 0, 1e-10}, 0.0, dt);
    for (double v : g.u) {
      CHECK(v >= a - 1e-14);
      CHECK(v <= b + 1e-14);
    }
  }
}

TEST_CASE("2D step on a separable mode") {
  const Grid2D g = build_grid_2d(1.0, 1.0, 21, 21);
  Field2D f(g);
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i)
      f.at(i, j) = std::sin(std::numbers::pi * g.x(i)) * std::sin(std::numbers::pi * g.y(j));
  f.bc = Dirichlet2D::uniform(g, 0.0);
  const double dt = 1e-3;
  for (int n = 0; n < 20; ++n)
    f = predictor_corrector_step(f, DiffusionModel::constant(1.0), {},
                                 {2, Sampling::uniform, 20, 1e-12}, n * dt, dt);
  const double decay = std::exp(-2 * std::numbers::pi * std::numbers::pi * 0.02);
  double err = 0.0;
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i)
      err = std::max(err, std::abs(f.at(i, j) - decay * std::sin(std::numbers::pi * g.x(i)) *
                                                    std::sin(std::numbers::pi * g.y(j))));
  CHECK(err < 2e-3);
}

TEST_CASE("source term is frozen at the start of the step") {
  const Field1D f = sine_field(9);
  const Source1D src = [](double x, double t, double u) { return x + 3.0 * t + u * u; };
  const double t = 0.4, dt = 0.05, d = 0.3;
  const auto out =
      predictor_corrector_step(f, DiffusionModel::constant(d), src, {0, Sampling::uniform, 0, 0.0}, t, dt);
  const double w = 1.0 / (f.grid.dx * f.grid.dx);
  for (std::size_t i = 1; i + 1 < f.grid.nx; ++i) {
    const double s = src(f.grid.x(i), t, f.u[i]);
    const auto poly = NeighborPolynomial::constant(w * (f.u[i - 1] + f.u[i + 1]));
    CHECK(out.u[i] == doctest::Approx(closed_form_update({d * w, s, f.u[i]}, poly, d, dt)).epsilon(1e-14));
  }
}
