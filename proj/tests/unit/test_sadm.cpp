#include <cmath>
#include <random>
#include <string>

#include "dirode/errors.hpp"
#include "dirode/sadm.hpp"
#include "dirode/temporal_ode.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace dirode;

namespace {

double rk4_rational(double u0, double ul, double ur, double d0, double beta, double s, double dx,
                    double dt) {
  const double a = -2.0 / (dx * dx), b = (ul + ur) / (dx * dx);
  return oracle::rk4(
      [&](double, double u) { return d0 / (1.0 + beta * u) * (a * u + b) + s; }, u0, dt, 2000);
}

}  // namespace

TEST_CASE("tau polynomial arithmetic") {
  const TauPolynomial p{{1.0, 2.0}}, q{{0.0, -1.0, 3.0}};
  CHECK((p + q).c == std::vector<double>{1.0, 1.0, 3.0});
  CHECK((p * q).c == std::vector<double>{0.0, -1.0, 1.0, 6.0});
  CHECK((2.0 * p).c == std::vector<double>{2.0, 4.0});
  CHECK(q.integral().c == std::vector<double>{0.0, 0.0, -0.5, 1.0});
  CHECK(p(0.5) == 2.0);
}

TEST_CASE("adomian expansion examples") {
  const double lam = -1.7;
  NonlinearODESpec lin{[=](double u) { return lam * u; }, [=](double) { return lam; },
                       [](double) { return 0.0; }, [](double) { return 0.0; }};
  const auto s = adomian_expand(lin, 1.0, 3, 0.2);
  REQUIRE(s.terms.size() == 4);
  CHECK(s.terms[0].c == std::vector<double>{1.0});
  const double tau = 0.13;
  CHECK(s(tau) == doctest::Approx(1 + lam * tau + lam * lam * tau * tau / 2 +
                                  lam * lam * lam * tau * tau * tau / 6)
                      .epsilon(1e-15));
  for (std::size_t k = 1; k < s.terms.size(); ++k) CHECK(s.terms[k](0.0) == 0.0);

  NonlinearODESpec sq{[](double u) { return u * u; }, [](double u) { return 2 * u; },
                      [](double) { return 2.0; }, [](double) { return 0.0; }};
  const auto r = adomian_expand(sq, 1.0, 3, 0.1);
  const auto sum = r.sum();
  REQUIRE(sum.c.size() >= 4);
  for (int k = 0; k < 4; ++k) CHECK(sum.c[k] == doctest::Approx(1.0));
  for (std::size_t k = 4; k < sum.c.size(); ++k) CHECK(sum.c[k] == 0.0);

  NonlinearODESpec rest{[](double u) { return u * (1 - u); }, [](double u) { return 1 - 2 * u; },
                        [](double) { return -2.0; }, [](double) { return 0.0; }};
  const auto z = adomian_expand(rest, 1.0, 3, 0.5);
  for (std::size_t k = 1; k < z.terms.size(); ++k)
    for (double c : z.terms[k].c) CHECK(c == 0.0);
  CHECK_THROWS_AS(adomian_expand(lin, 1.0, 4, 0.1), ValidationError);
}

TEST_CASE("closed-form kernel agrees with the generic expansion") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double d0 = 0.5 + uni(rng) * 0.4, beta = 3 * std::abs(uni(rng)), u0 = 0.5 + 0.4 * uni(rng);
    const double a = -2.0 - uni(rng), b = 2.0 + uni(rng), c = uni(rng);
    const double dt = 0.05;
    const auto spec = rational_diffusion_spec(d0, beta, a, b, c);
    for (int k = 0; k <= 3; ++k) {
      const double generic = adomian_expand(spec, u0, k, dt)(dt);
      CHECK(sadm_rational_kernel(u0, a, b, c, d0, beta, dt, k) ==
            doctest::Approx(generic).epsilon(1e-13));
    }
  }
}

TEST_CASE("stationary start returns u0") {
  for (int k = 0; k <= 3; ++k)
    for (double dt : {1e-3, 1.0, 100.0})
      CHECK(sadm_nonlinear_diffusion_step(0.5, 0.2, 0.8, 0.3, 7.0, 0.0, 0.1, dt, k) ==
            doctest::Approx(0.5).epsilon(1e-15));
  for (int k = 0; k <= 3; ++k)
    CHECK(sadm_nonlinear_diffusion_step(0.7, 0.1, 4.0, 0.3, 7.0, 0.0, 0.1, 0.0, k) == 0.7);
}

TEST_CASE("linear limit matches the exponential update to order K") {
  const double d = 0.8, dx = 0.1, u = 0.3, ul = 0.9, ur = -0.2;
  const double abar = d / (dx * dx);
  auto exact = [&](double dt) {
    return closed_form_update({abar, 0.0, u},
                              NeighborPolynomial::constant((ul + ur) / (dx * dx)), d, dt);
  };
  for (int k = 1; k <= 3; ++k) {
    const double e1 = std::abs(sadm_nonlinear_diffusion_step(u, ul, ur, d, 0.0, 0.0, dx, 1e-3, k) - exact(1e-3));
    const double e2 = std::abs(sadm_nonlinear_diffusion_step(u, ul, ur, d, 0.0, 0.0, dx, 5e-4, k) - exact(5e-4));
    CHECK(std::log2(e1 / e2) == doctest::Approx(k + 1).epsilon(0.05));
  }
}

TEST_CASE("one step agrees with RK4 of the representative ODE") {
  std::mt19937_64 rng(40);
  std::uniform_real_distribution<double> val(0.0, 0.02);
  const double d0 = 1e-3, beta = 10.0, dx = 6.283185307179586 / 199, dt = 0.01;
  for (int trial = 0; trial < 50; ++trial) {
    const double u = val(rng), ul = val(rng), ur = val(rng);
    const double ref = rk4_rational(u, ul, ur, d0, beta, 0.0, dx, dt);
    CHECK(std::abs(sadm_nonlinear_diffusion_step(u, ul, ur, d0, beta, 0.0, dx, dt, 3) - ref) <
          1e-6 * std::max(std::abs(ref), 1e-2));
  }
}

TEST_CASE("observed order is K + 1") {
  const double u = 0.4, ul = 0.9, ur = 0.1, d0 = 0.2, beta = 2.0, s = 0.3, dx = 0.1;
  for (int k = 1; k <= 3; ++k) {
    double prev = -1.0;
    for (double dt : {4e-3, 2e-3, 1e-3}) {
      const double e = std::abs(sadm_nonlinear_diffusion_step(u, ul, ur, d0, beta, s, dx, dt, k) -
                                rk4_rational(u, ul, ur, d0, beta, s, dx, dt));
      if (prev > 0) CHECK(prev / e >= 0.8 * std::pow(2.0, k + 1));
      prev = e;
    }
  }
}

TEST_CASE("field steps") {
  Field1D z(build_grid_1d(1.0, 11), 0.0);
  for (double v : sadm_field_step(z, 1e-3, 10.0, {}, 0.0, 0.01, 3).u) CHECK(v == 0.0);
  Field1D k(build_grid_1d(1.0, 11), 0.25);
  k.bc = {0.25, 0.25};
  for (double v : sadm_field_step(k, 1e-3, 10.0, {}, 0.0, 0.01, 3).u)
    CHECK(v == doctest::Approx(0.25).epsilon(1e-15));

  const Grid2D g = build_grid_2d(1.0, 2.0, 7, 9);
  Field2D f(g);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> val(0.0, 1.0);
  for (double& v : f.u) v = val(rng);
  capture_boundary(f);
  SadmDiagnostics diag;
  const Source2D src = [](double x, double, double, double u) { return x * u; };
  const auto out = sadm_field_step(f, 0.1, 3.0, src, 0.0, 1e-3, 3, &diag);
  CHECK(diag.nodes == 5 * 7);
  const double wx = 1.0 / (g.dx * g.dx), wy = 1.0 / (g.dy * g.dy);
  for (std::size_t j = 1; j + 1 < g.ny; ++j)
    for (std::size_t i = 1; i + 1 < g.nx; ++i) {
      const double b = wx * (f.at(i - 1, j) + f.at(i + 1, j)) + wy * (f.at(i, j - 1) + f.at(i, j + 1));
      const double c = g.x(i) * f.at(i, j);
      CHECK(out.at(i, j) ==
            doctest::Approx(sadm_rational_kernel(f.at(i, j), -2 * (wx + wy), b, c, 0.1, 3.0, 1e-3, 3))
                .epsilon(1e-15));
    }
}

TEST_CASE("singular diffusion is reported with the node") {
  Field1D f(build_grid_1d(1.0, 5), 0.0);
  f.u[2] = -0.5;
  try {
    sadm_field_step(f, 1.0, 2.0, {}, 0.0, 0.01, 2);
    FAIL("expected an error");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("node 2") != std::string::npos);
  }
}

TEST_CASE("ratio warnings are counted") {
  Field1D f(build_grid_1d(1.0, 5), 0.0);
  f.u = {0, 1e-6, 0, 0, 0};
  SadmDiagnostics diag;
  sadm_field_step(f, 1.0, 0.0, {}, 0.0, 10.0, 3, &diag);
  CHECK(diag.ratio_warnings >= 1);
}
